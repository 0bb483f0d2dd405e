#pragma once

#include <cmath>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

/// Half-width of the strip |Im z| < pi/2 that the hairpin map is defined on.
inline constexpr double strip_half_width = pi / 2.0;

struct HairpinValue {
  cplx F;
  double u = 0.0;
  double grad_norm_sq = 0.0;
};

inline void require_in_strip(cplx z) {
  if (!(std::abs(z.imag()) <= strip_half_width))
    throw Error(ErrorKind::OutsideStrip, "|Im z| exceeds pi/2");
}

/// F(z) = z + sinh z, the roof pulled back as Re cosh z, and |grad u|^2 at F(z).
inline HairpinValue hairpin_eval(cplx z) {
  require_in_strip(z);
  const double ch = std::cosh(z.real());
  const double cy = std::cos(z.imag());
  return {z + std::sinh(z), std::cosh(z).real(), (ch - cy) / (ch + cy)};
}

inline cplx hairpin_map(cplx z) {
  require_in_strip(z);
  return z + std::sinh(z);
}

/// Strict membership in |Im w| < pi/2 + cosh(Re w).
inline bool hairpin_contains(cplx w) {
  return std::abs(w.imag()) < strip_half_width + std::cosh(w.real());
}

/// Boundary point x + i sign (pi/2 + cosh x), sign = +1 upper, -1 lower.
inline cplx hairpin_boundary_point(double x, double sign) {
  return {x, sign * (strip_half_width + std::cosh(x))};
}

/// Preimage of w under z + sinh z by Newton iteration from `guess`.
inline cplx hairpin_inverse(cplx w, cplx guess, double tol = 1e-15, int max_iterations = 50) {
  cplx z = guess;
  for (int it = 0; it < max_iterations; ++it) {
    const cplx step = (z + std::sinh(z) - w) / (1.0 + std::cosh(z));
    z -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) {
      require_in_strip(z);
      return z;
    }
  }
  throw Error(ErrorKind::NonConvergence, "hairpin inverse did not converge");
}

}  // namespace exflat
