#pragma once

#include <cmath>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/quadrature.hpp"

namespace exflat {

/// Entire integrand exp(-sinh z) of the periodic example.
inline cplx pathological_integrand(cplx z) { return std::exp(-std::sinh(z)); }

/// F(z) = integral of exp(-sinh) along the segment from 0 to z.
inline cplx pathological_eval(cplx z, double tol = 1e-10) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (z.real() < 0.0) throw Error(ErrorKind::OutsideDomain, "pathological example is evaluated on Re z >= 0");
  if (z == cplx{0.0}) return 0.0;
  return integrate_segment([](cplx w) { return pathological_integrand(w); }, cplx{0.0}, z, tol);
}

/// C = i * integral over [0, 2 pi] of exp(-i sin s) ds, the period of F under z -> z + 2 pi i.
inline cplx period_constant(double tol = 1e-10) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const QuadratureResult r =
      integrate_real([](double s) { return std::exp(cplx(0.0, -std::sin(s))); }, 0.0, two_pi, tol);
  return I * r.value;
}

}  // namespace exflat
