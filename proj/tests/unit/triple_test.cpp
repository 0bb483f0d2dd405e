#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "exflat/triple.hpp"
#include "support/oracles.hpp"

using namespace exflat;

namespace {
PoissonSpectrum asymmetric_pair() {
  const std::vector<cplx> anchors{1.0, -1.0};
  const std::vector<double> weights{1.0, 2.0};
  return validate_spectrum(anchors, weights);
}
}  // namespace

TEST(AssembleTriple, HalfPlane) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(1));
  EXPECT_TRUE(t.disk_zeros().roots.empty());
  EXPECT_TRUE(t.h().zeros().empty());
  oracle::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const cplx z = rng.disk_point(0.99);
    EXPECT_EQ(t.h()(z), cplx(1.0));
    const cplx expected = 2.0 / ((1.0 - z) * (1.0 - z));
    EXPECT_LE(std::abs(t.phi(z) - expected), 1e-12 * std::abs(expected));
  }
}

TEST(AssembleTriple, CatenoidAnalogue) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  ASSERT_EQ(t.disk_zeros().roots.size(), 1u);
  EXPECT_EQ(t.disk_zeros().roots[0].multiplicity, 1);
  EXPECT_LE(std::abs(t.disk_zeros().roots[0].value), 1e-15);
  EXPECT_TRUE(t.cancellation_exact());

  // mu = 0 gives h = -z, so Phi = -4/(1-z^2)^2; mu = pi restores h = z.
  const WeierstrassTriple adjusted = assemble_triple(PoissonSpectrum::symmetric(2), 1e-10, 1e-8, pi);
  oracle::Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const cplx z = rng.disk_point(0.99);
    const cplx closed = 4.0 / ((1.0 - z * z) * (1.0 - z * z));
    EXPECT_LE(std::abs(t.phi(z) + closed), 1e-12 * std::abs(closed));
    EXPECT_LE(std::abs(adjusted.phi(z) - closed), 1e-12 * std::abs(closed));
  }
  EXPECT_NEAR(std::abs(t.phi(0.0) + 4.0), 0.0, 1e-14);
}

TEST(AssembleTriple, AsymmetricPairZeroFromQuadraticFormula) {
  const WeierstrassTriple t = assemble_triple(asymmetric_pair());
  ASSERT_EQ(t.disk_zeros().roots.size(), 1u);
  const double expected = oracle::real_quadratic_roots(-6.0, 1.0).first;
  EXPECT_NEAR(t.disk_zeros().roots[0].value.real(), expected, 1e-14);
  EXPECT_NEAR(t.disk_zeros().roots[0].value.real(), 0.171573, 1e-6);
  const RootSet all = poly_roots(t.numerator(), 1e-10, 1e-8);
  ASSERT_EQ(all.roots.size(), 2u);
  EXPECT_EQ(all.roots[1].location, DiskLocation::outside_disk);
  EXPECT_NEAR(all.roots[1].value.real(), 3.0 + 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(AssembleTriple, PhiFiniteThroughCancelledZero) {
  const WeierstrassTriple t = assemble_triple(asymmetric_pair());
  const cplx z0 = t.disk_zeros().roots[0].value;
  const cplx at = t.phi(z0);
  EXPECT_TRUE(std::isfinite(at.real()) && std::isfinite(at.imag()));
  EXPECT_GT(std::abs(at), 0.1);
  // Continuity through the removable point.
  EXPECT_LE(std::abs(t.phi(z0 + 1e-7) - at), 1e-5 * std::abs(at));
}

TEST(AssembleTriple, RootNearBoundaryRejected) {
  try {
    assemble_triple(asymmetric_pair(), 1e-10, 0.9);
    FAIL() << "expected RootNearBoundary";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RootNearBoundary);
  }
}

TEST(AssembleTriple, InjectedSpuriousZeroKeepsRemainder) {
  const WeierstrassTriple good = assemble_triple(asymmetric_pair());
  std::vector<cplx> zeros(good.h().zeros().begin(), good.h().zeros().end());
  zeros.push_back(0.3);
  const WeierstrassTriple bad(good.spectrum(), good.numerator(), good.disk_zeros(), BlaschkeProduct(zeros));
  EXPECT_FALSE(bad.cancellation_exact());
  // Phi = dU / h picks up a pole at the spurious zero instead of a zero.
  const cplx z(0.3 + 1e-6, 0.0);
  EXPECT_GT(std::abs(bad.phi(z)), 1e3);
  const cplx w(-0.4, 0.3);
  EXPECT_LE(std::abs(bad.phi(w) - bad.dU(w) / bad.h()(w)), 1e-12 * std::abs(bad.phi(w)));
}

TEST(TripleProperty, SymmetricFamilyPhaseAdjusted) {
  oracle::Rng rng(3);
  for (int n = 1; n <= 6; ++n) {
    const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(n), 1e-10, 1e-8, pi * (n - 1));
    EXPECT_EQ(static_cast<int>(t.h().zeros().size()), n - 1);
    for (int k = 0; k < 50; ++k) {
      const cplx z = rng.disk_point(0.99);
      const cplx zn = std::pow(z, n);
      const cplx closed = 2.0 * n / ((1.0 - zn) * (1.0 - zn));
      EXPECT_LE(std::abs(t.phi(z) - closed), 1e-11 * std::abs(closed)) << "n=" << n;
    }
  }
}

TEST(TripleProperty, CancellationAndNormalization) {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    std::vector<double> degrees, weights;
    for (int k = 0; k < n; ++k) {
      degrees.push_back((360.0 / n) * (k + rng.uniform(0.1, 0.9)));
      weights.push_back(rng.uniform(0.1, 2.0));
    }
    const WeierstrassTriple t = assemble_triple(PoissonSpectrum::from_degrees(degrees, weights));
    EXPECT_TRUE(t.cancellation_exact());
    EXPECT_EQ(t.disk_zeros().expanded().size(), t.h().zeros().size());
    EXPECT_EQ(static_cast<int>(t.h().zeros().size()), n - 1);
    double min_phi = 1e300;
    for (int i = 0; i <= 30; ++i)
      for (int k = 0; k < 60; ++k) min_phi = std::min(min_phi, std::abs(t.phi(std::polar(0.995 * i / 30, two_pi * k / 60))));
    EXPECT_GT(min_phi, 0.0);
    for (int k = 0; k < 100; ++k) {
      const double theta = rng.uniform(0, two_pi);
      if (t.spectrum().distance_to_anchors(std::polar(1.0, theta)) < 1e-3) continue;
      const cplx z = std::polar(1.0, theta);
      EXPECT_LE(std::abs(std::abs(t.dU(z)) - std::abs(t.phi(z))), 1e-9 * std::abs(t.phi(z)));
    }
  }
}
