#pragma once

#include <vector>

#include "exflat/spectrum.hpp"
#include "support/oracles.hpp"

namespace fixture {

/// Spectrum with one anchor drawn in each of n equal sectors and weights in [0.1, 2].
inline exflat::PoissonSpectrum random_spectrum(oracle::Rng& rng, int n) {
  std::vector<double> degrees, weights;
  for (int k = 0; k < n; ++k) {
    degrees.push_back((360.0 / n) * (k + rng.uniform(0.1, 0.9)));
    weights.push_back(rng.uniform(0.1, 2.0));
  }
  return exflat::PoissonSpectrum::from_degrees(degrees, weights);
}

/// Anchors +-1 with weights 1 and 2.
inline exflat::PoissonSpectrum asymmetric_pair() {
  const std::vector<double> degrees{0.0, 180.0};
  const std::vector<double> weights{1.0, 2.0};
  return exflat::PoissonSpectrum::from_degrees(degrees, weights);
}

}  // namespace fixture
