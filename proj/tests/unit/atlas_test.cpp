#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "exflat/atlas/boundary.hpp"
#include "exflat/atlas/compare.hpp"
#include "exflat/atlas/ends.hpp"
#include "exflat/atlas/intersections.hpp"
#include "exflat/atlas/similarity.hpp"
#include "support/oracles.hpp"

using namespace exflat;

TEST(TraceBoundary, HalfPlaneIsImaginaryAxis) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(1));
  const BoundaryCurve c = trace_boundary(t, 0, 101, 0.05, 1.0);
  ASSERT_EQ(c.points.size(), 101u);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double expected = 1.0 / std::tan(c.thetas[i] / 2.0);
    EXPECT_NEAR(c.points[i].real(), 0.0, 1e-8);
    EXPECT_NEAR(c.points[i].imag(), expected, 1e-8 * std::max(1.0, std::abs(expected)));
    EXPECT_LE(std::abs(c.us[i]), 1e-10);
  }
  // theta = pi/2 is the sample in the middle of the arc [0.05, 2pi - 0.05] only at odd N; check directly.
  EXPECT_NEAR(std::abs(map_point(t, I, 1.0) - I), 0.0, 1e-8);
}

TEST(TraceBoundary, CatenoidArcsOnOppositeSides) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  const BoundaryCurve upper = trace_boundary(t, 0, 500, 1e-3);
  const BoundaryCurve lower = trace_boundary(t, 1, 500, 1e-3);
  for (std::size_t i = 0; i < 500; ++i) {
    EXPECT_LT(upper.points[i].imag() * lower.points[i].imag(), 0.0);
    EXPECT_LE(std::abs(upper.us[i]), 1e-10);
  }
  for (const double th : upper.thetas) {
    EXPECT_GT(th, 1e-3 - 1e-15);
    EXPECT_LT(th, pi - 1e-3 + 1e-15);
  }
}

TEST(TraceBoundary, WorkerCountDoesNotChangeValues) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(3));
  const BoundaryCurve a = trace_boundary(t, 1, 64, 1e-2, 0.0, 1e-10, 1);
  const BoundaryCurve b = trace_boundary(t, 1, 64, 1e-2, 0.0, 1e-10, 3);
  EXPECT_EQ(a.points, b.points);
}

TEST(TraceBoundary, RejectsBadArguments) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  EXPECT_THROW(trace_boundary(t, 0, 1, 1e-3), Error);
  EXPECT_THROW(trace_boundary(t, 0, 10, 0.0), Error);
  EXPECT_THROW(trace_boundary(t, 2, 10, 1e-3), Error);
  EXPECT_THROW(trace_boundary(t, 0, 10, 2.0), Error);
}

TEST(EndData, HalfPlaneDirections) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(1));
  const EndReport r = end_data(t, 0, 0.5, 12);
  EXPECT_NEAR(std::abs(r.tau_plus - I), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(r.tau_minus + I), 0.0, 1e-6);
  EXPECT_NEAR(r.theta_j, pi, 1e-6);
  EXPECT_NEAR(std::abs(r.tau_plus), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r.tau_minus), 1.0, 1e-12);
}

TEST(EndData, CatenoidBothEnds) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  for (std::size_t j = 0; j < 2; ++j) {
    const EndReport r = end_data(t, j, 0.5, 12);
    EXPECT_NEAR(r.theta_j, pi, 1e-3);
    EXPECT_NEAR(std::abs(r.tau_plus * std::exp(cplx(0.0, r.theta_j)) / r.tau_plus), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(r.tau_plus - std::exp(cplx(0.0, r.theta_j)) * r.tau_minus), 0.0, 1e-12);
  }
}

TEST(EndData, StableUnderRatioChange) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  const EndReport coarse = end_data(t, 0, 0.5, 11);
  const EndReport fine = end_data(t, 0, 0.8, 30);
  EXPECT_NEAR(coarse.theta_j, fine.theta_j, 1e-6);
}

TEST(EndData, RejectsBadArguments) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  EXPECT_THROW(end_data(t, 0, 1.0, 5), Error);
  EXPECT_THROW(end_data(t, 0, 0.5, 2), Error);
  EXPECT_THROW(end_data(t, 3, 0.5, 5), Error);
}

TEST(EndData, NonCauchySequenceIsReported) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  try {
    end_data(t, 0, 0.9, 4, 0.5, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConvergence);
  }
}

TEST(Crossings, HandExample) {
  const std::vector<std::vector<cplx>> lines{{0.0, cplx(1, 1)}, {1.0, I}};
  const auto found = polyline_crossings(lines);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_NEAR(std::abs(found[0].point - cplx(0.5, 0.5)), 0.0, 1e-15);
}

TEST(Crossings, SharedEndpointsAndTouchingIgnored) {
  const std::vector<std::vector<cplx>> chain{{0.0, 1.0, cplx(1, 1), cplx(0, 1)}};
  EXPECT_TRUE(polyline_crossings(chain).empty());
  const std::vector<std::vector<cplx>> touching{{0.0, 2.0}, {1.0, cplx(1, 1)}};
  EXPECT_TRUE(polyline_crossings(touching).empty());
  const std::vector<std::vector<cplx>> single{{0.0}};
  EXPECT_THROW(polyline_crossings(single), Error);
}

TEST(Crossings, SelfCrossingFigureEight) {
  const std::vector<std::vector<cplx>> eight{{0.0, cplx(1, 1), cplx(1, 0), cplx(0, 1)}};
  EXPECT_EQ(polyline_crossings(eight).size(), 1u);
}

TEST(CrossingsProperty, MatchesBruteForce) {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<cplx>> lines(3);
    for (auto& l : lines)
      for (int k = 0; k < 15; ++k) l.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    EXPECT_EQ(static_cast<int>(polyline_crossings(lines).size()), oracle::brute_force_crossings(lines));
  }
}

TEST(Crossings, SymmetricBoundaries) {
  for (int n : {1, 2}) {
    const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(n));
    EXPECT_EQ(self_intersections(trace_all_boundaries(t, 400, 1e-3)).size(), 0u) << "n = " << n;
  }
  for (int n : {3, 4}) {
    const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(n));
    EXPECT_GE(self_intersections(trace_all_boundaries(t, 400, 1e-3)).size(), 1u) << "n = " << n;
  }
}

TEST(Similarity, IdentityAndExact) {
  std::vector<cplx> a{0.0, 1.0, cplx(0.3, 2.0), cplx(-1.0, 0.5)};
  SimilarityFit same = fit_similarity(a, a, false);
  EXPECT_NEAR(std::abs(same.transform.rotation_scale - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(same.transform.translation), 0.0, 1e-15);
  EXPECT_NEAR(same.residual, 0.0, 1e-15);

  const cplx lambda = 2.0 * std::polar(1.0, pi / 3), c(1.0, -1.0);
  std::vector<cplx> b;
  for (const cplx p : a) b.push_back(lambda * p + c);
  const SimilarityFit fit = fit_similarity(a, b, true);
  EXPECT_NEAR(std::abs(fit.transform.rotation_scale - lambda), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(fit.transform.translation - c), 0.0, 1e-12);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_FALSE(fit.transform.reflects);
}

TEST(Similarity, ReflectionFoundWhenAllowed) {
  std::vector<cplx> a{0.0, 1.0, cplx(0.3, 2.0), cplx(-1.0, 0.5)};
  std::vector<cplx> b;
  for (const cplx p : a) b.push_back(cplx(0.0, 3.0) * std::conj(p) + 2.0);
  EXPECT_GT(fit_similarity(a, b, false).residual, 1e-3);
  const SimilarityFit fit = fit_similarity(a, b, true);
  EXPECT_TRUE(fit.transform.reflects);
  EXPECT_LT(fit.residual, 1e-14);
}

TEST(Similarity, Degenerate) {
  std::vector<cplx> a{cplx(1, 1), cplx(1, 1), cplx(1, 1)};
  std::vector<cplx> b{0.0, 1.0, 2.0};
  try {
    fit_similarity(a, b, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateConfiguration);
  }
}

TEST(SimilarityProperty, ApplyInvertRoundTrip) {
  oracle::Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    SimilarityTransform tr{std::polar(rng.uniform(0.1, 10.0), rng.uniform(0, 6.28)), {rng.uniform(-5, 5), rng.uniform(-5, 5)},
                           k % 2 == 0};
    const cplx w = rng.disk_point(100.0);
    EXPECT_NEAR(std::abs(tr.invert(tr.apply(w)) - w), 0.0, 1e-12 * std::max(1.0, std::abs(w)));
  }
}

TEST(CurvatureVertex, ParabolaVertex) {
  std::vector<cplx> pts;
  for (int k = -50; k <= 50; ++k) {
    const double x = 0.01 * k + 0.003;
    pts.push_back({x, 0.5 * x * x});
  }
  const CurveVertex v = curvature_vertex(pts);
  EXPECT_NEAR(v.curvature, 1.0, 1e-4);
}

TEST(CompareWithHairpin, ExactHairpinSamplesFitPerfectly) {
  std::array<BoundaryCurve, 2> arcs;
  for (int k = 0; k <= 400; ++k) {
    const double x = -6.0 + 12.0 * k / 400;
    arcs[0].points.push_back(3.0 * hairpin_boundary_point(x, 1.0) + cplx(1, 2));
    arcs[1].points.push_back(3.0 * hairpin_boundary_point(-x, -1.0) + cplx(1, 2));
  }
  const HairpinComparison cmp = compare_with_hairpin(arcs);
  EXPECT_LT(cmp.fit.residual, 1e-5);
}

TEST(CompareWithHairpin, CatenoidBoundary) {
  const WeierstrassTriple t = assemble_triple(PoissonSpectrum::symmetric(2));
  const std::vector<BoundaryCurve> arcs = trace_all_boundaries(t, 2000, 1e-3);
  const HairpinComparison cmp = compare_with_hairpin(arcs);
  EXPECT_LT(cmp.fit.residual, 1e-4);
  EXPECT_NEAR(std::abs(cmp.fit.transform.rotation_scale), 1.0, 1e-3);
}
