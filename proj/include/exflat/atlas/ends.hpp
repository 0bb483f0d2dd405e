#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "exflat/atlas/boundary.hpp"
#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/flow.hpp"
#include "exflat/triple.hpp"

namespace exflat {

/// Asymptotic directions of the boundary image at anchor j.
///
/// tau_plus is the limit direction of F(e^{i theta}) as theta decreases to the anchor
/// (the arc leaving the anchor counterclockwise), tau_minus as theta increases to it
/// (the arc arriving from the clockwise side). theta_j = arg(tau_plus / tau_minus) in (0, 2 pi).
struct EndReport {
  std::size_t anchor_index = 0;
  cplx tau_minus{1.0};
  cplx tau_plus{1.0};
  double theta_j = 0.0;
  double extrapolation_error = 0.0;
};

namespace detail {

struct DirectionLimit {
  double angle = 0.0;
  double error = 0.0;
};

// Limit of phi(d) as d -> 0 under the model phi = phi0 + d (a log d + b), fitted
// exactly on consecutive triples of samples; the last two fits give the error.
inline DirectionLimit extrapolate_direction(const std::vector<double>& d, const std::vector<double>& phi) {
  std::vector<double> estimates;
  for (std::size_t k = 0; k + 2 < d.size(); ++k) {
    Eigen::Matrix3d m;
    Eigen::Vector3d rhs;
    for (std::size_t r = 0; r < 3; ++r) {
      const double x = d[k + r];
      m(static_cast<Eigen::Index>(r), 0) = 1.0;
      m(static_cast<Eigen::Index>(r), 1) = x * std::log(x);
      m(static_cast<Eigen::Index>(r), 2) = x;
      rhs(static_cast<Eigen::Index>(r)) = phi[k + r];
    }
    estimates.push_back(m.colPivHouseholderQr().solve(rhs)(0));
  }
  DirectionLimit out{estimates.back(), 0.0};
  if (estimates.size() > 1) out.error = std::abs(estimates.back() - estimates[estimates.size() - 2]);
  return out;
}

}  // namespace detail

/// Samples F at angular distances d0 * ratio^k (k = 0..K-1) on both sides of anchor j,
/// extrapolates the unit directions, and returns both limits with the end angle.
/// Throws NoConvergence when successive extrapolants differ by more than cauchy_tol.
inline EndReport end_data(const WeierstrassTriple& t, std::size_t j, double geometric_ratio, int K,
                          double start_distance = 1e-2, double cauchy_tol = 1e-4, double tol = 1e-10) {
  const PoissonSpectrum& s = t.spectrum();
  if (j >= s.size()) throw Error(ErrorKind::InvalidArgument, "anchor index out of range");
  if (!(geometric_ratio > 0.0 && geometric_ratio < 1.0))
    throw Error(ErrorKind::InvalidArgument, "geometric_ratio must lie in (0, 1)");
  if (K < 3) throw Error(ErrorKind::InvalidArgument, "end_data needs K >= 3");
  const auto [next_lo, next_hi] = arc_bounds(s, j);
  const auto [prev_lo, prev_hi] = arc_bounds(s, j == 0 ? s.size() - 1 : j - 1);
  const double shortest = std::min(next_hi - next_lo, prev_hi - prev_lo);
  if (!(start_distance > 0.0 && start_distance < 0.5 * shortest))
    throw Error(ErrorKind::InvalidArgument, "start_distance must be positive and below half the adjacent arcs");

  std::vector<double> d(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) d[static_cast<std::size_t>(k)] = start_distance * std::pow(geometric_ratio, k);
  const double delta = clearance_for_angle(d.back());
  const double beta = s.angle(j);

  auto limit = [&](double side) {
    std::vector<double> phi(d.size());
    cplx previous{0.0};
    for (std::size_t k = 0; k < d.size(); ++k) {
      // |F| grows like 1/d, so the tolerance is kept relative to it.
      const cplx F = map_point(t, std::polar(1.0, beta + side * d[k]), 0.0, tol / d[k], delta);
      if (F == cplx{0.0}) throw Error(ErrorKind::NoConvergence, "boundary image passes through the base value");
      phi[k] = k == 0 ? std::arg(F) : phi[k - 1] + std::arg(F / previous);
      previous = F;
    }
    return detail::extrapolate_direction(d, phi);
  };

  const detail::DirectionLimit plus = limit(1.0);
  const detail::DirectionLimit minus = limit(-1.0);
  EndReport report;
  report.anchor_index = j;
  report.extrapolation_error = std::max(plus.error, minus.error);
  if (!(report.extrapolation_error <= cauchy_tol))
    throw Error(ErrorKind::NoConvergence, "end directions not Cauchy: successive extrapolants differ by " +
                                              std::to_string(report.extrapolation_error));
  report.tau_plus = std::polar(1.0, plus.angle);
  report.tau_minus = std::polar(1.0, minus.angle);
  report.theta_j = wrap_angle(std::arg(report.tau_plus / report.tau_minus));
  return report;
}

}  // namespace exflat
