#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/polynomial.hpp"

namespace exflat {

/// Anchors on the unit circle with positive weights; defines
///   U(z) = - sum_k a_k (z + alpha_k) / (z - alpha_k).
/// Anchors are kept in counterclockwise order of their angle in [0, 2pi).
class PoissonSpectrum {
 public:
  static constexpr double circle_tolerance = 1e-12;
  static constexpr double singularity_radius = 1e-14;

  static PoissonSpectrum validate(std::span<const cplx> anchors, std::span<const double> weights,
                                  double sep_min = 1e-6) {
    if (anchors.empty()) throw Error(ErrorKind::InvalidArgument, "spectrum needs at least one anchor");
    if (anchors.size() != weights.size())
      throw Error(ErrorKind::InvalidArgument, "anchor and weight lists differ in length");

    struct Entry {
      double angle;
      cplx anchor;
      double weight;
    };
    std::vector<Entry> entries;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      const double m = std::abs(anchors[k]);
      if (!(std::abs(m - 1.0) <= circle_tolerance))
        throw Error(ErrorKind::AnchorOffCircle, "anchor " + std::to_string(k) + " has modulus " + std::to_string(m));
      if (!(weights[k] > 0.0) || !std::isfinite(weights[k]))
        throw Error(ErrorKind::NonpositiveWeight, "weight " + std::to_string(k) + " is not positive");
      const cplx a = m == 1.0 ? anchors[k] : anchors[k] / m;
      entries.push_back({wrap_angle(std::arg(a)), a, weights[k]});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.angle < b.angle; });

    const std::size_t n = entries.size();
    for (std::size_t k = 0; k < n && n > 1; ++k) {
      const double next = k + 1 < n ? entries[k + 1].angle : entries[0].angle + two_pi;
      if (next - entries[k].angle <= sep_min)
        throw Error(ErrorKind::DuplicateAnchors, "anchors " + std::to_string(k) + " and " +
                                                     std::to_string((k + 1) % n) + " are closer than sep_min");
    }

    PoissonSpectrum s;
    for (const Entry& e : entries) {
      s.angles_.push_back(e.angle);
      s.anchors_.push_back(e.anchor);
      s.weights_.push_back(e.weight);
    }
    return s;
  }

  static PoissonSpectrum from_degrees(std::span<const double> degrees, std::span<const double> weights,
                                      double sep_min = 1e-6) {
    std::vector<cplx> anchors;
    for (const double d : degrees) anchors.push_back(unit_from_degrees(d));
    return validate(anchors, weights, sep_min);
  }

  /// n-th roots of unity with weights 1/n: U = (1 + z^n) / (1 - z^n).
  static PoissonSpectrum symmetric(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "symmetric spectrum needs n >= 1");
    std::vector<double> degrees, weights;
    for (int k = 0; k < n; ++k) {
      degrees.push_back(360.0 * k / n);
      weights.push_back(1.0 / n);
    }
    return from_degrees(degrees, weights);
  }

  std::size_t size() const { return anchors_.size(); }
  std::span<const cplx> anchors() const { return anchors_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> angles() const { return angles_; }
  cplx anchor(std::size_t j) const { return anchors_[j]; }
  double angle(std::size_t j) const { return angles_[j]; }

  double distance_to_anchors(cplx z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const cplx a : anchors_) d = std::min(d, std::abs(z - a));
    return d;
  }

 private:
  PoissonSpectrum() = default;

  std::vector<double> angles_;
  std::vector<cplx> anchors_;
  std::vector<double> weights_;
};

inline PoissonSpectrum validate_spectrum(std::span<const cplx> anchors, std::span<const double> weights,
                                         double sep_min = 1e-6) {
  return PoissonSpectrum::validate(anchors, weights, sep_min);
}

namespace detail {
inline void require_away_from_anchors(const PoissonSpectrum& s, cplx z) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (std::abs(z - s.anchor(k)) < PoissonSpectrum::singularity_radius)
      throw Error(ErrorKind::AnchorSingularity, "evaluation point coincides with anchor " + std::to_string(k));
}
}  // namespace detail

inline cplx eval_U(const PoissonSpectrum& s, cplx z) {
  detail::require_away_from_anchors(s, z);
  cplx acc{0.0};
  for (std::size_t k = 0; k < s.size(); ++k) acc -= s.weights()[k] * (z + s.anchor(k)) / (z - s.anchor(k));
  return acc;
}

inline cplx eval_dU(const PoissonSpectrum& s, cplx z) {
  detail::require_away_from_anchors(s, z);
  cplx acc{0.0};
  for (std::size_t k = 0; k < s.size(); ++k) {
    const cplx d = z - s.anchor(k);
    acc += 2.0 * s.weights()[k] * s.anchor(k) / (d * d);
  }
  return acc;
}

/// U at the circle point e^{i theta}. Each Moebius term is -i cot((theta - beta_k)/2)
/// there, so the value is exactly imaginary and the roof vanishes identically.
inline cplx eval_U_on_circle(const PoissonSpectrum& s, double theta) {
  double v = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double half = 0.5 * (theta - s.angle(k));
    const double sh = std::sin(half);
    if (std::abs(sh) < PoissonSpectrum::singularity_radius)
      throw Error(ErrorKind::AnchorSingularity, "circle point coincides with anchor " + std::to_string(k));
    v += s.weights()[k] * std::cos(half) / sh;
  }
  return {0.0, v};
}

/// P(z) = prod_j (z - alpha_j)^2 U'(z) = sum_k 2 a_k alpha_k prod_{j != k} (z - alpha_j)^2.
/// Expanded in extended precision; degree at most 2n - 2.
inline Polynomial numerator_polynomial(const PoissonSpectrum& s) {
  using lcplx = std::complex<long double>;
  const std::size_t n = s.size();
  std::vector<lcplx> total(2 * n - 1, lcplx{0.0L});
  for (std::size_t k = 0; k < n; ++k) {
    const lcplx ak(s.anchor(k).real(), s.anchor(k).imag());
    std::vector<lcplx> term{2.0L * static_cast<long double>(s.weights()[k]) * ak};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const lcplx aj(s.anchor(j).real(), s.anchor(j).imag());
      for (int rep = 0; rep < 2; ++rep) {
        term.push_back(lcplx{0.0L});
        for (std::size_t i = term.size() - 1; i > 0; --i) term[i] = term[i - 1] - aj * term[i];
        term[0] = -aj * term[0];
      }
    }
    for (std::size_t i = 0; i < term.size(); ++i) total[i] += term[i];
  }
  std::vector<cplx> coeffs;
  for (const lcplx& c : total) coeffs.emplace_back(static_cast<double>(c.real()), static_cast<double>(c.imag()));
  return Polynomial(std::move(coeffs));
}

}  // namespace exflat
