#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

/// w -> lambda * w + c, or lambda * conj(w) + c when reflecting.
struct SimilarityTransform {
  cplx rotation_scale{1.0};
  cplx translation{0.0};
  bool reflects = false;

  cplx apply(cplx w) const { return rotation_scale * (reflects ? std::conj(w) : w) + translation; }
  cplx invert(cplx w) const {
    const cplx v = (w - translation) / rotation_scale;
    return reflects ? std::conj(v) : v;
  }
};

struct SimilarityFit {
  SimilarityTransform transform;
  double residual = 0.0;  // RMS misfit divided by the diameter of the target set
};

/// Largest pairwise distance.
inline double point_set_diameter(std::span<const cplx> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

namespace detail {

inline SimilarityFit fit_complex_linear(std::span<const cplx> a, std::span<const cplx> b, bool reflect,
                                        double diameter) {
  const double count = static_cast<double>(a.size());
  cplx mean_a{0.0}, mean_b{0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += reflect ? std::conj(a[i]) : a[i];
    mean_b += b[i];
  }
  mean_a /= count;
  mean_b /= count;
  cplx cross{0.0};
  double spread = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx da = (reflect ? std::conj(a[i]) : a[i]) - mean_a;
    cross += std::conj(da) * (b[i] - mean_b);
    spread += std::norm(da);
  }
  SimilarityFit fit;
  fit.transform.rotation_scale = cross / spread;
  fit.transform.reflects = reflect;
  fit.transform.translation = mean_b - fit.transform.rotation_scale * mean_a;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += std::norm(fit.transform.apply(a[i]) - b[i]);
  const double rms = std::sqrt(sq / count);
  fit.residual = diameter > 0.0 ? rms / diameter : rms;
  return fit;
}

}  // namespace detail

/// Least-squares similarity B ~ lambda A + c over corresponded points, optionally
/// also trying lambda conj(A) + c and keeping the better fit.
inline SimilarityFit fit_similarity(std::span<const cplx> a, std::span<const cplx> b, bool allow_reflection) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "point lists differ in length");
  if (a.size() < 2) throw Error(ErrorKind::InvalidArgument, "similarity fit needs at least two points");
  bool distinct = false;
  for (const cplx p : a) distinct = distinct || p != a.front();
  if (!distinct) throw Error(ErrorKind::DegenerateConfiguration, "all source points coincide");
  const double diameter = point_set_diameter(b);
  if (diameter == 0.0) throw Error(ErrorKind::DegenerateConfiguration, "all target points coincide");

  SimilarityFit best = detail::fit_complex_linear(a, b, false, diameter);
  if (allow_reflection) {
    const SimilarityFit mirrored = detail::fit_complex_linear(a, b, true, diameter);
    if (mirrored.residual < best.residual) best = mirrored;
  }
  return best;
}

}  // namespace exflat
