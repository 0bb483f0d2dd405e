#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

/// Finite Blaschke product  e^{-i mu} prod_k (z - z_k) / (conj(z_k) z - 1).
///
/// With mu = 0 and zeros at the origin this is (-1)^m z^m, so the textbook
/// h(z) = z^m differs from the canonical form by a unimodular constant.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;

  BlaschkeProduct(std::vector<cplx> zeros, double phase_mu = 0.0, double eps_bdry = 1e-8)
      : zeros_(std::move(zeros)), mu_(wrap_angle(phase_mu)) {
    for (const cplx z : zeros_)
      if (!(std::abs(z) < 1.0 - eps_bdry))
        throw Error(ErrorKind::InvalidArgument,
                    "Blaschke zero of modulus " + std::to_string(std::abs(z)) + " is not inside the disk");
    rotation_ = mu_ == 0.0 ? cplx{1.0} : std::polar(1.0, -mu_);
  }

  std::span<const cplx> zeros() const { return zeros_; }
  double phase() const { return mu_; }

  cplx operator()(cplx z) const {
    cplx acc = rotation_;
    for (const cplx zk : zeros_) acc *= (z - zk) / (std::conj(zk) * z - 1.0);
    return acc;
  }

 private:
  std::vector<cplx> zeros_;
  double mu_ = 0.0;
  cplx rotation_{1.0};
};

inline cplx blaschke_eval(const BlaschkeProduct& b, cplx z) { return b(z); }

}  // namespace exflat
