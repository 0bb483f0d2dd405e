#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <tuple>
#include <vector>

#include "exflat/atlas/boundary.hpp"
#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

struct Crossing {
  std::size_t curve_a = 0;
  std::size_t segment_a = 0;
  std::size_t curve_b = 0;
  std::size_t segment_b = 0;
  cplx point;
};

/// Crossings closer than this to a segment endpoint are discarded.
inline constexpr double crossing_endpoint_tolerance = 1e-9;

namespace detail {

struct SweepSegment {
  cplx p, q;
  double xmin, xmax, ymin, ymax;
  std::size_t curve, index;
};

inline double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline bool transverse_crossing(const SweepSegment& s, const SweepSegment& t, cplx& at) {
  const cplx r = s.q - s.p;
  const cplx e = t.q - t.p;
  const double denom = cross2(r, e);
  if (denom == 0.0) return false;
  const double u = cross2(t.p - s.p, e) / denom;
  const double v = cross2(t.p - s.p, r) / denom;
  if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) return false;
  at = s.p + u * r;
  for (const cplx end : {s.p, s.q, t.p, t.q})
    if (std::abs(at - end) < crossing_endpoint_tolerance) return false;
  return true;
}

}  // namespace detail

/// Transverse crossings between and within polylines, found with an x-sorted sweep.
/// Consecutive segments of one polyline are not tested against each other.
inline std::vector<Crossing> polyline_crossings(std::span<const std::vector<cplx>> lines) {
  std::vector<detail::SweepSegment> segs;
  for (std::size_t c = 0; c < lines.size(); ++c) {
    if (lines[c].size() < 2) throw Error(ErrorKind::InvalidArgument, "each curve needs at least two points");
    for (std::size_t i = 0; i + 1 < lines[c].size(); ++i) {
      const cplx p = lines[c][i], q = lines[c][i + 1];
      segs.push_back({p, q, std::min(p.real(), q.real()), std::max(p.real(), q.real()), std::min(p.imag(), q.imag()),
                      std::max(p.imag(), q.imag()), c, i});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.xmin, a.curve, a.index) < std::tie(b.xmin, b.curve, b.index);
  });

  std::vector<Crossing> out;
  std::vector<const detail::SweepSegment*> active;
  for (const detail::SweepSegment& s : segs) {
    std::erase_if(active, [&](const detail::SweepSegment* a) { return a->xmax < s.xmin; });
    for (const detail::SweepSegment* a : active) {
      if (a->ymax < s.ymin || s.ymax < a->ymin) continue;
      if (a->curve == s.curve && (a->index + 1 == s.index || s.index + 1 == a->index)) continue;
      cplx at;
      if (!detail::transverse_crossing(*a, s, at)) continue;
      Crossing c{a->curve, a->index, s.curve, s.index, at};
      if (std::tie(c.curve_b, c.segment_b) < std::tie(c.curve_a, c.segment_a)) {
        std::swap(c.curve_a, c.curve_b);
        std::swap(c.segment_a, c.segment_b);
      }
      out.push_back(c);
    }
    active.push_back(&s);
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return std::tie(a.curve_a, a.segment_a, a.curve_b, a.segment_b) <
           std::tie(b.curve_a, b.segment_a, b.curve_b, b.segment_b);
  });
  return out;
}

inline std::vector<Crossing> self_intersections(std::span<const BoundaryCurve> curves) {
  std::vector<std::vector<cplx>> lines;
  for (const BoundaryCurve& c : curves) lines.push_back(c.points);
  return polyline_crossings(lines);
}

}  // namespace exflat
