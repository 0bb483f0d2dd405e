#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/flow.hpp"
#include "exflat/parallel.hpp"
#include "exflat/triple.hpp"

namespace exflat {

/// Image of the boundary arc from anchor j to anchor j+1 (counterclockwise).
struct BoundaryCurve {
  std::size_t arc_index = 0;
  std::vector<double> thetas;
  std::vector<cplx> points;
  std::vector<double> us;
};

/// Angular interval (start, end) of arc j with start < end; end may exceed 2 pi.
inline std::pair<double, double> arc_bounds(const PoissonSpectrum& s, std::size_t j) {
  if (j >= s.size()) throw Error(ErrorKind::InvalidArgument, "arc index out of range");
  const double start = s.angle(j);
  double end = j + 1 < s.size() ? s.angle(j + 1) : s.angle(0) + two_pi;
  if (s.size() == 1) end = start + two_pi;
  return {start, end};
}

/// Clearance that still admits paths ending at angular distance eps_end from an anchor.
inline double clearance_for_angle(double eps_end) {
  return std::min(default_clearance, std::sin(0.5 * eps_end));
}

/// N equally spaced samples of the open arc j clipped by eps_end at both anchors.
/// F comes from map_point along paths from 0; u from the exact boundary value of Re U.
inline BoundaryCurve trace_boundary(const WeierstrassTriple& t, std::size_t j, int N, double eps_end, cplx F0 = 0.0,
                                    double tol = 1e-10, unsigned workers = 1) {
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "trace_boundary needs N >= 2");
  if (!(eps_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps_end must be positive");
  const auto [start, end] = arc_bounds(t.spectrum(), j);
  const double lo = start + eps_end;
  const double hi = end - eps_end;
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "eps_end leaves an empty arc");
  const double delta = clearance_for_angle(eps_end);

  BoundaryCurve curve;
  curve.arc_index = j;
  const auto count = static_cast<std::size_t>(N);
  curve.thetas.resize(count);
  curve.points.resize(count);
  curve.us.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    curve.thetas[i] = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(N - 1);
  parallel_for(count, workers, [&](std::size_t i) {
    const double theta = curve.thetas[i];
    curve.points[i] = map_point(t, std::polar(1.0, theta), F0, tol, delta);
    curve.us[i] = eval_U_on_circle(t.spectrum(), theta).real();
  });
  return curve;
}

/// All arcs of the triple, in anchor order.
inline std::vector<BoundaryCurve> trace_all_boundaries(const WeierstrassTriple& t, int N, double eps_end,
                                                       cplx F0 = 0.0, double tol = 1e-10, unsigned workers = 1) {
  std::vector<BoundaryCurve> out;
  for (std::size_t j = 0; j < t.spectrum().size(); ++j) out.push_back(trace_boundary(t, j, N, eps_end, F0, tol, workers));
  return out;
}

}  // namespace exflat
