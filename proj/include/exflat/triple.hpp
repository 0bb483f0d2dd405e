#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "exflat/blaschke.hpp"
#include "exflat/complex.hpp"
#include "exflat/error.hpp"
#include "exflat/polynomial.hpp"
#include "exflat/spectrum.hpp"

namespace exflat {

/// Weierstrass data (U, h, Phi = dU / h) over the unit disk.
///
/// Phi is evaluated in the cancelled rational form
///   Phi(z) = e^{i mu} (Q(z) + R(z)/B(z)) prod_k (conj(z_k) z - 1) / prod_j (z - alpha_j)^2
/// where B = prod_k (z - z_k) runs over the zeros of h and P = Q B + R. When every
/// zero of h is a root of P the remainder R is roundoff and is dropped, so Phi is
/// evaluated straight through the removable points without forming 0/0.
class WeierstrassTriple {
 public:
  /// Relative size below which the division remainder counts as roundoff.
  static constexpr double remainder_tolerance = 1e-8;

  WeierstrassTriple(PoissonSpectrum spectrum, Polynomial numerator, RootSet disk_zeros, BlaschkeProduct h)
      : spectrum_(std::move(spectrum)),
        numerator_(std::move(numerator)),
        disk_zeros_(std::move(disk_zeros)),
        h_(std::move(h)) {
    const std::vector<cplx> hz(h_.zeros().begin(), h_.zeros().end());
    const PolyDivision division = poly_divide(numerator_, Polynomial::from_roots(hz));
    quotient_ = division.quotient;
    if (division.remainder.max_abs_coefficient() > remainder_tolerance * numerator_.max_abs_coefficient())
      remainder_ = division.remainder;
  }

  const PoissonSpectrum& spectrum() const { return spectrum_; }
  const BlaschkeProduct& h() const { return h_; }
  const Polynomial& numerator() const { return numerator_; }
  const RootSet& disk_zeros() const { return disk_zeros_; }

  /// True when the zeros of h divide P exactly (up to roundoff).
  bool cancellation_exact() const { return remainder_.is_zero(); }

  cplx U(cplx z) const { return eval_U(spectrum_, z); }
  cplx dU(cplx z) const { return eval_dU(spectrum_, z); }

  cplx phi(cplx z) const {
    detail::require_away_from_anchors(spectrum_, z);
    cplx num = poly_eval(quotient_, z);
    if (!remainder_.is_zero()) {
      cplx b{1.0};
      for (const cplx zk : h_.zeros()) b *= z - zk;
      num += poly_eval(remainder_, z) / b;
    }
    for (const cplx zk : h_.zeros()) num *= std::conj(zk) * z - 1.0;
    cplx den{1.0};
    for (const cplx a : spectrum_.anchors()) den *= (z - a) * (z - a);
    cplx value = num / den;
    if (h_.phase() != 0.0) value *= std::polar(1.0, h_.phase());
    return value;
  }

  cplx operator()(cplx z) const { return phi(z); }

 private:
  PoissonSpectrum spectrum_;
  Polynomial numerator_;
  RootSet disk_zeros_;
  BlaschkeProduct h_;
  Polynomial quotient_;
  Polynomial remainder_;
};

/// Builds (U, h, Phi) from a spectrum: P, its roots, and h from the roots inside the disk.
/// Throws RootNearBoundary when a root of P falls in the band of half-width eps_bdry
/// around the unit circle.
inline WeierstrassTriple assemble_triple(const PoissonSpectrum& s, double tol = 1e-10, double eps_bdry = 1e-8,
                                         double mu = 0.0) {
  Polynomial p = numerator_polynomial(s);
  RootSet inside;
  if (p.degree() >= 1) {
    const RootSet all = poly_roots(p, tol, eps_bdry);
    for (const Root& r : all.roots)
      if (r.location == DiskLocation::boundary_band)
        throw Error(ErrorKind::RootNearBoundary, "numerator root of modulus " + std::to_string(std::abs(r.value)) +
                                                     " lies within eps_bdry of the unit circle");
    inside = all.restricted_to(DiskLocation::inside_disk);
  }
  BlaschkeProduct h(inside.expanded(), mu, eps_bdry);
  return WeierstrassTriple(s, std::move(p), std::move(inside), std::move(h));
}

}  // namespace exflat
