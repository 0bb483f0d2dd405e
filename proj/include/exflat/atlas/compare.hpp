#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "exflat/atlas/boundary.hpp"
#include "exflat/atlas/hairpin.hpp"
#include "exflat/atlas/similarity.hpp"
#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

/// Point of maximal curvature on a polyline, refined between samples.
struct CurveVertex {
  double arc_length = 0.0;  // from the first sample
  double curvature = 0.0;   // unsigned
};

/// Cumulative chord length along the polyline.
inline std::vector<double> cumulative_arc_length(std::span<const cplx> pts) {
  std::vector<double> s(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) s[i] = s[i - 1] + std::abs(pts[i] - pts[i - 1]);
  return s;
}

/// Discrete curvature from the circle through three consecutive samples; the peak
/// is refined by a parabola through its neighbours.
inline CurveVertex curvature_vertex(std::span<const cplx> pts) {
  if (pts.size() < 5) throw Error(ErrorKind::DegenerateConfiguration, "curve too short to locate a vertex");
  const std::vector<double> s = cumulative_arc_length(pts);
  std::vector<double> kappa(pts.size(), 0.0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const cplx a = pts[i] - pts[i - 1], b = pts[i + 1] - pts[i], c = pts[i + 1] - pts[i - 1];
    kappa[i] = 2.0 * std::abs((std::conj(a) * b).imag()) / (std::abs(a) * std::abs(b) * std::abs(c));
  }
  std::size_t m = 1;
  for (std::size_t i = 2; i + 1 < pts.size(); ++i)
    if (kappa[i] > kappa[m]) m = i;
  if (m < 2 || m + 2 >= pts.size())
    throw Error(ErrorKind::DegenerateConfiguration, "curvature peaks at the end of the sampled arc");

  const double x0 = s[m - 1], x1 = s[m], x2 = s[m + 1];
  const double y0 = kappa[m - 1], y1 = kappa[m], y2 = kappa[m + 1];
  const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
  const double second = (d12 - d01) / (x2 - x0);
  if (!(second < 0.0)) return {x1, y1};
  // y = y1 + d (x - x1) + second (x - x1)^2 with d the slope at x1.
  const double slope = d01 + second * (x1 - x0);
  const double shift = -slope / (2.0 * second);
  return {x1 + shift, y1 + slope * shift + second * shift * shift};
}

/// Hairpin boundary point at curvature-normalized arc length sigma from its vertex.
/// Arc length from x = 0 along x + i (pi/2 + cosh x) is sinh x and the vertex curvature is 1.
inline cplx hairpin_boundary_at_arc_length(double sigma, double side) {
  return hairpin_boundary_point(std::asinh(sigma), side);
}

struct HairpinComparison {
  SimilarityFit fit;
  std::size_t samples = 0;
};

/// Similarity fit of two boundary arcs against the two hairpin boundary components.
/// Each arc is matched by curvature-normalized arc length from its curvature vertex;
/// every pairing of arcs to components and every orientation is tried and the best kept.
inline HairpinComparison compare_with_hairpin(std::span<const BoundaryCurve> arcs) {
  if (arcs.size() != 2) throw Error(ErrorKind::InvalidArgument, "hairpin comparison needs exactly two arcs");
  std::array<std::vector<double>, 2> sigma;
  std::vector<cplx> source;
  for (std::size_t k = 0; k < 2; ++k) {
    const std::vector<cplx>& pts = arcs[k].points;
    const CurveVertex v = curvature_vertex(pts);
    const std::vector<double> s = cumulative_arc_length(pts);
    for (const double len : s) sigma[k].push_back(v.curvature * (len - v.arc_length));
    source.insert(source.end(), pts.begin(), pts.end());
  }

  HairpinComparison best;
  best.samples = source.size();
  best.fit.residual = std::numeric_limits<double>::infinity();
  for (const double first_side : {1.0, -1.0})
    for (const double dir0 : {1.0, -1.0})
      for (const double dir1 : {1.0, -1.0}) {
        std::vector<cplx> target;
        for (const double sg : sigma[0]) target.push_back(hairpin_boundary_at_arc_length(dir0 * sg, first_side));
        for (const double sg : sigma[1]) target.push_back(hairpin_boundary_at_arc_length(dir1 * sg, -first_side));
        const SimilarityFit fit = fit_similarity(source, target, true);
        if (fit.residual < best.fit.residual) best.fit = fit;
      }
  return best;
}

}  // namespace exflat
