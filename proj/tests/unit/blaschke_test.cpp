#include <gtest/gtest.h>

#include <cmath>

#include "exflat/blaschke.hpp"
#include "support/oracles.hpp"

using namespace exflat;

TEST(Blaschke, EmptyProductIsOne) {
  const BlaschkeProduct b;
  EXPECT_EQ(blaschke_eval(b, cplx(0.3, -0.7)), cplx(1.0));
}

TEST(Blaschke, UnimodularOnCircle) {
  const BlaschkeProduct b({0.5});
  for (int k = 0; k < 32; ++k) EXPECT_NEAR(std::abs(b(std::polar(1.0, two_pi * k / 32))), 1.0, 1e-14);
}

TEST(Blaschke, ValueAtOriginIsTheZero) {
  const double r = 3.0 - 2.0 * std::sqrt(2.0);
  const BlaschkeProduct b({r});
  EXPECT_NEAR(b(0.0).real(), oracle::real_quadratic_roots(-6.0, 1.0).first, 1e-15);
  EXPECT_NEAR(b(0.0).imag(), 0.0, 1e-16);
  EXPECT_NEAR(b(0.0).real(), 0.171572875253809902, 1e-15);
}

TEST(Blaschke, PhaseRotatesAndWraps) {
  const BlaschkeProduct b({cplx(0.2, 0.1)}, 2.0 * two_pi + 0.5);
  EXPECT_NEAR(b.phase(), 0.5, 1e-12);
  const BlaschkeProduct plain({cplx(0.2, 0.1)});
  const cplx z(0.1, 0.4);
  EXPECT_NEAR(std::abs(b(z) - std::polar(1.0, -0.5) * plain(z)), 0.0, 1e-15);
}

TEST(Blaschke, ZeroAtOriginIsMinusZ) {
  const BlaschkeProduct b({0.0, 0.0});
  const cplx z(0.3, 0.2);
  EXPECT_NEAR(std::abs(b(z) - z * z), 0.0, 1e-16);
  const BlaschkeProduct c({0.0});
  EXPECT_NEAR(std::abs(c(z) + z), 0.0, 1e-16);
}

TEST(Blaschke, RejectsZerosOutsideDisk) {
  EXPECT_THROW(BlaschkeProduct({1.2}), Error);
  EXPECT_THROW(BlaschkeProduct({cplx(0.0, 1.0)}), Error);
}

TEST(BlaschkeProperty, UnimodularForRandomProducts) {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> zeros;
    const int m = 1 + static_cast<int>(rng.uniform() * 8);
    for (int k = 0; k < m; ++k) zeros.push_back(rng.disk_point(0.98));
    const BlaschkeProduct b(zeros, rng.uniform(0, two_pi));
    for (int k = 0; k < 64; ++k) {
      const cplx z = std::polar(1.0, rng.uniform(0, two_pi));
      EXPECT_LE(std::abs(std::abs(b(z)) - 1.0), 1e-12);
    }
    for (int k = 0; k < 16; ++k) EXPECT_LT(std::abs(b(rng.disk_point(0.999))), 1.0 + 1e-12);
  }
}
