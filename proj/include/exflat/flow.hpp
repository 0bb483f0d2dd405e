#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/parallel.hpp"
#include "exflat/quadrature.hpp"
#include "exflat/spectrum.hpp"
#include "exflat/triple.hpp"

namespace exflat {

inline constexpr double default_clearance = 1e-3;

/// Integration path in the closed disk that keeps distance >= puncture_clearance
/// from every anchor.
struct PathPolyline {
  std::vector<cplx> vertices;
  double puncture_clearance = default_clearance;

  /// Smallest distance from any segment to any anchor.
  double clearance(const PoissonSpectrum& s) const {
    double d = std::numeric_limits<double>::infinity();
    for (const cplx a : s.anchors()) {
      if (vertices.size() == 1) d = std::min(d, std::abs(vertices.front() - a));
      for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        d = std::min(d, segment_distance(a, vertices[i], vertices[i + 1]));
    }
    return d;
  }

  bool admissible(const PoissonSpectrum& s) const {
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
      if (vertices[i] == vertices[i + 1]) return false;
    for (const cplx v : vertices)
      if (std::abs(v) > 1.0 + 1e-15) return false;
    return clearance(s) >= puncture_clearance;
  }
};

/// Path from `from` to `to`: the straight segment when it clears every anchor disk,
/// otherwise a two-segment detour through a vertex rotated away from the offending anchor.
inline PathPolyline plan_path(const PoissonSpectrum& s, cplx from, cplx to, double delta = default_clearance) {
  if (s.distance_to_anchors(to) < delta || s.distance_to_anchors(from) < delta)
    throw Error(ErrorKind::PunctureTooClose, "path endpoint lies within the anchor clearance");
  PathPolyline path{{from}, delta};
  if (from == to) return path;
  path.vertices.push_back(to);
  if (path.admissible(s)) return path;

  static constexpr std::array<double, 4> scales = {0.98, 0.95, 0.9, 0.8};
  static constexpr std::array<double, 5> turns = {0.01, 0.03, 0.1, 0.3, 0.6};
  for (const double turn : turns)
    for (const double scale : scales)
      for (const double sign : {1.0, -1.0}) {
        const cplx via = from + (to - from) * scale * std::polar(1.0, sign * turn);
        PathPolyline candidate{{from, via, to}, delta};
        if (candidate.admissible(s)) return candidate;
      }
  throw Error(ErrorKind::PunctureTooClose, "no admissible path around the anchor clearance disks");
}

template <class F>
cplx integrate_path(const F& f, const PathPolyline& path, double tol) {
  cplx acc{0.0};
  const std::size_t segments = path.vertices.size() > 1 ? path.vertices.size() - 1 : 1;
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
    acc += integrate_segment(f, path.vertices[i], path.vertices[i + 1], tol / static_cast<double>(segments));
  return acc;
}

/// F(z) = F0 + integral of Phi from the base point 0 to z.
inline cplx map_point(const WeierstrassTriple& t, cplx z, cplx F0 = 0.0, double tol = 1e-10,
                      double delta = default_clearance) {
  if (z == cplx{0.0}) return F0;
  const PathPolyline path = plan_path(t.spectrum(), cplx{0.0}, z, delta);
  return F0 + integrate_path(t, path, tol);
}

struct FieldSample {
  double r = 0.0;
  double phi = 0.0;
  cplx z;
  cplx F;
  double u = 0.0;
};

struct FieldGrid {
  std::vector<FieldSample> samples;
  cplx base_point{0.0};
  cplx base_value{0.0};
};

/// Polar grid r_i = rmax (i+1)/radial, phi_k = 2 pi k / angular with F and u = Re U.
inline FieldGrid map_grid(const WeierstrassTriple& t, int radial, int angular, double rmax, double tol,
                          cplx F0 = 0.0, double delta = default_clearance, unsigned workers = 1) {
  if (radial < 2 || angular < 2) throw Error(ErrorKind::InvalidArgument, "grid needs radial, angular >= 2");
  if (!(rmax > 0.0 && rmax <= 1.0)) throw Error(ErrorKind::InvalidArgument, "grid rmax must lie in (0, 1]");
  FieldGrid grid;
  grid.base_value = F0;
  grid.samples.resize(static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular));
  parallel_for(grid.samples.size(), workers, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / angular;
    const int k = static_cast<int>(idx) % angular;
    FieldSample& s = grid.samples[idx];
    s.r = rmax * (i + 1) / radial;
    s.phi = two_pi * k / angular;
    s.z = std::polar(s.r, s.phi);
    s.F = map_point(t, s.z, F0, tol, delta);
    s.u = t.U(s.z).real();
  });
  return grid;
}

/// |F_1(z) - F_2(z)| for the direct segment from 0 and for a radial-then-arc path
/// (out to radius |z|/2 at angle arg z + 1, back along the arc, then out to z).
inline double check_path_independence(const WeierstrassTriple& t, cplx z, double tol,
                                      double delta = default_clearance) {
  if (z == cplx{0.0}) return 0.0;
  const cplx direct = map_point(t, z, 0.0, tol, delta);

  const double rho = 0.5 * std::abs(z);
  const double phi = std::arg(z);
  const double psi = phi + 1.0;
  const cplx corner = std::polar(rho, psi);
  const double part = tol / 3.0;
  cplx detour = integrate_segment(t, cplx{0.0}, corner, part);
  detour += integrate_curve(
                t, [rho](double s) { return std::polar(rho, s); },
                [rho](double s) { return I * std::polar(rho, s); }, psi, phi, part)
                .value;
  detour += integrate_path(t, plan_path(t.spectrum(), std::polar(rho, phi), z, delta), part);
  return std::abs(direct - detour);
}

}  // namespace exflat
