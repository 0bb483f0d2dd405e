#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "exflat/atlas/hairpin.hpp"
#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/flow.hpp"
#include "exflat/parallel.hpp"
#include "exflat/polynomial.hpp"
#include "exflat/quadrature.hpp"
#include "exflat/triple.hpp"

namespace exflat {

struct Tolerances {
  double unimodularity = 1e-10;
  double positivity_margin = 0.0;  // allowed undershoot below zero
  double nonvanishing_floor = 1e-12;
  double fd_step = 1e-5;
  double neumann_rel = 1e-3;
  double quadrature = 1e-10;
  double laplacian_step = 0x1.0p-6;
  double dirichlet = 1e-10;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0 && std::isfinite(v)))
        throw Error(ErrorKind::InvalidArgument, std::string("tolerance ") + name + " must be positive");
    };
    positive(unimodularity, "unimodularity");
    positive(nonvanishing_floor, "nonvanishing_floor");
    positive(fd_step, "fd_step");
    positive(neumann_rel, "neumann_rel");
    positive(quadrature, "quadrature");
    positive(laplacian_step, "laplacian_step");
    positive(dirichlet, "dirichlet");
    if (!(positivity_margin >= 0.0 && std::isfinite(positivity_margin)))
      throw Error(ErrorKind::InvalidArgument, "tolerance positivity_margin must be >= 0");
  }
};

enum class Bound { at_most, above, within };

inline const char* to_string(Bound b) noexcept {
  switch (b) {
    case Bound::at_most: return "at_most";
    case Bound::above: return "above";
    case Bound::within: return "within";
  }
  return "unknown";
}

struct CheckRecord {
  std::string name;
  double measured = 0.0;
  Bound bound = Bound::at_most;
  double threshold = 0.0;
  double threshold_hi = 0.0;  // upper end for Bound::within
  bool pass = false;
  std::size_t samples = 0;
};

inline CheckRecord make_record(std::string name, double measured, Bound bound, double threshold, std::size_t samples,
                               double threshold_hi = 0.0) {
  CheckRecord r{std::move(name), measured, bound, threshold, threshold_hi, false, samples};
  switch (bound) {
    case Bound::at_most: r.pass = measured <= threshold; break;
    case Bound::above: r.pass = measured > threshold; break;
    case Bound::within: r.pass = measured >= threshold && measured <= threshold_hi; break;
  }
  return r;
}

struct VerificationReport {
  std::vector<CheckRecord> records;

  bool pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
  }
  const CheckRecord* find(const std::string& name) const {
    for (const CheckRecord& r : records)
      if (r.name == name) return &r;
    return nullptr;
  }
  void append(const VerificationReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
};

struct GridSpec {
  int radial = 16;
  int angular = 32;
  double rmax = 0.995;

  void validate() const {
    if (radial < 2 || angular < 2) throw Error(ErrorKind::InvalidArgument, "grid needs radial, angular >= 2");
    if (!(rmax > 0.0 && rmax < 1.0)) throw Error(ErrorKind::InvalidArgument, "grid rmax must lie in (0, 1)");
  }
  std::vector<cplx> polar_points() const {
    std::vector<cplx> pts;
    for (int i = 0; i < radial; ++i)
      for (int k = 0; k < angular; ++k) pts.push_back(std::polar(rmax * (i + 1) / radial, two_pi * k / angular));
    return pts;
  }
};

inline constexpr int unimodularity_samples = 4096;
inline constexpr double blaschke_match_tolerance = 1e-6;
inline constexpr double refinement_ratio_lo = 3.5;
inline constexpr double refinement_ratio_hi = 4.5;
inline constexpr double first_order_ratio_lo = 1.6;
inline constexpr double first_order_ratio_hi = 2.4;

namespace detail {

inline VerificationReport run_checks(const std::vector<std::function<CheckRecord()>>& checks, unsigned workers) {
  VerificationReport report;
  report.records.resize(checks.size());
  parallel_for(checks.size(), workers, [&](std::size_t i) { report.records[i] = checks[i](); });
  return report;
}

// Largest Cauchy-Riemann defect of U over the points with central differences of step h.
inline double cauchy_riemann_residual(const WeierstrassTriple& t, const std::vector<cplx>& pts, double h) {
  double worst = 0.0;
  for (const cplx z : pts) {
    const cplx dx = (t.U(z + h) - t.U(z - h)) / (2.0 * h);
    const cplx dy = (t.U(z + cplx(0.0, h)) - t.U(z - cplx(0.0, h))) / (2.0 * h);
    worst = std::max(worst, std::abs(dx + I * dy));
  }
  return worst;
}

// Roots of P inside the disk, recomputed, against the zeros of h (with multiplicity).
inline double blaschke_zero_mismatch(const WeierstrassTriple& t) {
  std::vector<cplx> zeros(t.h().zeros().begin(), t.h().zeros().end());
  if (zeros.empty()) return 0.0;
  if (t.numerator().degree() < 1) return std::numeric_limits<double>::infinity();
  std::vector<cplx> roots = poly_roots(t.numerator(), 1e-10, 1e-8).expanded(DiskLocation::inside_disk);
  double worst = 0.0;
  for (const cplx z : zeros) {
    auto best = roots.end();
    double dist = std::numeric_limits<double>::infinity();
    for (auto it = roots.begin(); it != roots.end(); ++it)
      if (std::abs(*it - z) < dist) {
        dist = std::abs(*it - z);
        best = it;
      }
    worst = std::max(worst, dist);
    if (best != roots.end()) roots.erase(best);
  }
  return worst;
}

}  // namespace detail

/// Boundary unimodularity of h, positivity of Re U and nonvanishing of Phi on the grid,
/// holomorphy of U by a Cauchy-Riemann refinement test, and consistency of the zeros of h
/// with the interior roots of P.
inline VerificationReport verify_triple(const WeierstrassTriple& t, const GridSpec& grid, const Tolerances& tol,
                                        unsigned workers = 1) {
  grid.validate();
  tol.validate();
  const std::vector<cplx> pts = grid.polar_points();
  std::vector<std::function<CheckRecord()>> checks;
  checks.push_back([&] {
    double worst = 0.0;
    for (int k = 0; k < unimodularity_samples; ++k)
      worst = std::max(worst, std::abs(std::abs(t.h()(std::polar(1.0, two_pi * k / unimodularity_samples))) - 1.0));
    return make_record("blaschke_unimodularity", worst, Bound::at_most, tol.unimodularity, unimodularity_samples);
  });
  checks.push_back([&] {
    double lowest = std::numeric_limits<double>::infinity();
    for (const cplx z : pts) lowest = std::min(lowest, t.U(z).real());
    return make_record("roof_positivity", lowest, Bound::above, -tol.positivity_margin, pts.size());
  });
  checks.push_back([&] {
    double lowest = std::numeric_limits<double>::infinity();
    for (const cplx z : pts) lowest = std::min(lowest, std::abs(t.phi(z)));
    return make_record("phi_nonvanishing", lowest, Bound::above, tol.nonvanishing_floor, pts.size());
  });
  checks.push_back([&] {
    const double coarse = detail::cauchy_riemann_residual(t, pts, tol.fd_step);
    const double fine = detail::cauchy_riemann_residual(t, pts, 0.5 * tol.fd_step);
    const double ratio = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
    return make_record("cauchy_riemann_ratio", ratio, Bound::within, refinement_ratio_lo, pts.size(),
                       refinement_ratio_hi);
  });
  checks.push_back([&] {
    return make_record("blaschke_consistency", detail::blaschke_zero_mismatch(t), Bound::at_most,
                       blaschke_match_tolerance, t.h().zeros().size());
  });
  return detail::run_checks(checks, workers);
}

/// Angles 2 pi (k + 1/2) / samples at angular distance >= exclusion from every anchor.
inline std::vector<double> neumann_angles(const PoissonSpectrum& s, int samples, double exclusion) {
  std::vector<double> out;
  for (int k = 0; k < samples; ++k) {
    const double theta = two_pi * (k + 0.5) / samples;
    bool clear = true;
    for (const double a : s.angles()) clear = clear && std::abs(std::remainder(theta - a, two_pi)) >= exclusion;
    if (clear) out.push_back(theta);
  }
  return out;
}

namespace detail {

inline double neumann_deviation(const WeierstrassTriple& t, const std::vector<double>& angles, double s,
                                double quadrature) {
  double worst = 0.0;
  for (const double theta : angles) {
    const cplx edge = std::polar(1.0, theta);
    const cplx inner = (1.0 - s) * edge;
    const cplx jump = integrate_segment(t, inner, edge, quadrature * s);
    worst = std::max(worst, std::abs(t.U(inner).real() / std::abs(jump) - 1.0));
  }
  return worst;
}

inline double hairpin_neumann_deviation(const std::vector<double>& xs, double s) {
  double worst = 0.0;
  for (const double x : xs)
    for (const double side : {1.0, -1.0}) {
      const cplx edge(x, side * strip_half_width);
      const cplx inner(x, side * strip_half_width * (1.0 - s));
      const cplx step = edge - inner;
      // sinh a - sinh b = 2 cosh((a + b)/2) sinh((a - b)/2) avoids cancellation.
      const cplx jump = step + 2.0 * std::cosh(0.5 * (edge + inner)) * std::sinh(0.5 * step);
      const double u = std::cosh(x) * std::sin(strip_half_width * s);
      worst = std::max(worst, std::abs(u / std::abs(jump) - 1.0));
    }
  return worst;
}

inline CheckRecord first_order_record(double coarse, double fine, std::size_t samples) {
  const double ratio = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
  return make_record("neumann_first_order", ratio, Bound::within, first_order_ratio_lo, samples, first_order_ratio_hi);
}

}  // namespace detail

inline constexpr double neumann_anchor_exclusion = 0.1;

/// One-sided difference quotient u(F((1-s)e^{i theta})) / |F(e^{i theta}) - F((1-s)e^{i theta})|
/// at boundary angles away from the anchors; reports its largest deviation from 1 and
/// the ratio of deviations at s and s/2.
inline VerificationReport verify_neumann_fd(const WeierstrassTriple& t, int samples, double s, const Tolerances& tol,
                                            double exclusion = neumann_anchor_exclusion) {
  tol.validate();
  if (!(s > 0.0 && s < 0.1)) throw Error(ErrorKind::InvalidArgument, "inset s must lie in (0, 0.1)");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one boundary sample");
  const std::vector<double> angles = neumann_angles(t.spectrum(), samples, exclusion);
  if (angles.empty()) throw Error(ErrorKind::InvalidArgument, "no boundary samples clear of the anchors");
  const double coarse = detail::neumann_deviation(t, angles, s, tol.quadrature);
  const double fine = detail::neumann_deviation(t, angles, 0.5 * s, tol.quadrature);
  VerificationReport report;
  report.records.push_back(make_record("neumann_deviation", coarse, Bound::at_most, tol.neumann_rel, angles.size()));
  report.records.push_back(detail::first_order_record(coarse, fine, angles.size()));
  return report;
}

/// Same quotient for the hairpin, with the inset taken in the strip: x +- i (pi/2)(1 - s).
inline VerificationReport verify_neumann_hairpin(int samples, double s, const Tolerances& tol, double half_span = 3.0) {
  tol.validate();
  if (!(s > 0.0 && s < 0.1)) throw Error(ErrorKind::InvalidArgument, "inset s must lie in (0, 0.1)");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two boundary samples");
  std::vector<double> xs;
  for (int k = 0; k < samples; ++k) xs.push_back(-half_span + 2.0 * half_span * k / (samples - 1));
  const double coarse = detail::hairpin_neumann_deviation(xs, s);
  const double fine = detail::hairpin_neumann_deviation(xs, 0.5 * s);
  VerificationReport report;
  report.records.push_back(make_record("neumann_deviation", coarse, Bound::at_most, tol.neumann_rel, 2 * xs.size()));
  report.records.push_back(detail::first_order_record(coarse, fine, 2 * xs.size()));
  return report;
}

enum class ClosedFormRoof { hairpin, halfplane, exterior_disk_2d };

inline const char* to_string(ClosedFormRoof kind) noexcept {
  switch (kind) {
    case ClosedFormRoof::hairpin: return "hairpin";
    case ClosedFormRoof::halfplane: return "halfplane";
    case ClosedFormRoof::exterior_disk_2d: return "exterior_disk_2d";
  }
  return "unknown";
}

namespace detail {

struct RoofSamples {
  std::vector<cplx> interior;  // image-plane points
  std::vector<cplx> preimage;  // strip points for the hairpin, else equal to interior
  std::vector<cplx> boundary;
  std::vector<cplx> boundary_preimage;
};

inline RoofSamples roof_samples(ClosedFormRoof kind, const GridSpec& grid) {
  RoofSamples out;
  switch (kind) {
    case ClosedFormRoof::halfplane:
      for (int i = 0; i < grid.radial; ++i)
        for (int k = 0; k < grid.angular; ++k) out.interior.push_back({0.125 * (i + 1), 0.125 * (k - grid.angular / 2)});
      for (int k = 0; k < grid.angular; ++k) out.boundary.push_back({0.0, 0.125 * (k - grid.angular / 2)});
      out.preimage = out.interior;
      break;
    case ClosedFormRoof::exterior_disk_2d:
      for (int i = 0; i < grid.radial; ++i)
        for (int k = 0; k < grid.angular; ++k) out.interior.push_back(std::polar(1.0 + 0.25 * (i + 1), two_pi * k / grid.angular));
      for (int k = 0; k < grid.angular; ++k) out.boundary.push_back(std::polar(1.0, two_pi * k / grid.angular));
      out.preimage = out.interior;
      break;
    case ClosedFormRoof::hairpin:
      for (int i = 0; i < grid.radial; ++i)
        for (int k = 0; k < grid.angular; ++k) {
          const cplx z(-2.0 + 4.0 * i / (grid.radial - 1), -strip_half_width + pi * (k + 1) / (grid.angular + 1));
          out.preimage.push_back(z);
          out.interior.push_back(hairpin_map(z));
        }
      for (int i = 0; i < grid.radial; ++i)
        for (const double side : {1.0, -1.0}) {
          const cplx z(-2.0 + 4.0 * i / (grid.radial - 1), side * strip_half_width);
          out.boundary_preimage.push_back(z);
          out.boundary.push_back(hairpin_map(z));
        }
      break;
  }
  return out;
}

inline double roof_value(ClosedFormRoof kind, cplx w, cplx guess) {
  switch (kind) {
    case ClosedFormRoof::halfplane: return w.real();
    case ClosedFormRoof::exterior_disk_2d: return std::log(std::abs(w));
    case ClosedFormRoof::hairpin: return std::cosh(hairpin_inverse(w, guess)).real();
  }
  return 0.0;
}

inline double laplacian_residual(ClosedFormRoof kind, const RoofSamples& smp, double h) {
  double worst = 0.0;
  for (std::size_t i = 0; i < smp.interior.size(); ++i) {
    const cplx w = smp.interior[i], g = smp.preimage[i];
    const double sum = roof_value(kind, w + h, g) + roof_value(kind, w - h, g) + roof_value(kind, w + cplx(0.0, h), g) +
                       roof_value(kind, w - cplx(0.0, h), g) - 4.0 * roof_value(kind, w, g);
    worst = std::max(worst, std::abs(sum) / (h * h));
  }
  return worst;
}

}  // namespace detail

/// Five-point Laplacian of the roof in image coordinates (exactly zero for the affine
/// half-plane roof, otherwise a second-order refinement ratio), positivity inside,
/// and vanishing on the boundary.
inline VerificationReport verify_roof_closed_form(ClosedFormRoof kind, const GridSpec& grid, const Tolerances& tol) {
  tol.validate();
  if (grid.radial < 2 || grid.angular < 2) throw Error(ErrorKind::InvalidArgument, "grid needs radial, angular >= 2");
  const detail::RoofSamples smp = detail::roof_samples(kind, grid);
  const double h = tol.laplacian_step;
  VerificationReport report;
  const double coarse = detail::laplacian_residual(kind, smp, h);
  if (kind == ClosedFormRoof::halfplane) {
    report.records.push_back(make_record("laplacian_residual", coarse, Bound::at_most, 0.0, smp.interior.size()));
  } else {
    const double fine = detail::laplacian_residual(kind, smp, 0.5 * h);
    const double ratio = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
    report.records.push_back(make_record("laplacian_ratio", ratio, Bound::within, refinement_ratio_lo,
                                         smp.interior.size(), refinement_ratio_hi));
  }
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < smp.interior.size(); ++i)
    lowest = std::min(lowest, detail::roof_value(kind, smp.interior[i], smp.preimage[i]));
  report.records.push_back(
      make_record("roof_positivity", lowest, Bound::above, -tol.positivity_margin, smp.interior.size()));
  double edge = 0.0;
  for (std::size_t i = 0; i < smp.boundary.size(); ++i) {
    const double u = kind == ClosedFormRoof::hairpin ? std::cosh(smp.boundary_preimage[i]).real()
                                                     : detail::roof_value(kind, smp.boundary[i], smp.boundary[i]);
    edge = std::max(edge, std::abs(u));
  }
  report.records.push_back(make_record("boundary_values", edge, Bound::at_most, tol.dirichlet, smp.boundary.size()));
  return report;
}

}  // namespace exflat
