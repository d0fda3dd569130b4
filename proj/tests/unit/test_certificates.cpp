#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "avgjohn/certificates.hpp"
#include "avgjohn/errors.hpp"
#include "oracles.hpp"

namespace avgjohn {
namespace {

PointConfig cube_points(int k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<Vector> pts(n, Vector(k));
  for (std::size_t x = 0; x < n; ++x)
    for (int i = 0; i < k; ++i) pts[x][i] = (x >> i) & 1;
  return PointConfig(NormedHost::lp(1, k), pts);
}

TEST(HolderConstant, ZeroDistanceDistinctImages) {
  FiniteMetricSpace d = FiniteMetricSpace::trusted(Matrix::from_rows({{0, 0}, {0, 0}}));
  EmbeddingMap f(d, PointConfig(NormedHost::lp(2, 1), {{0}, {1}}), ProbabilityWeights::uniform(2));
  EXPECT_TRUE(std::isinf(holder_constant(f, 1.0)));
}

TEST(AvgDistortion, ScaleInvariant) {
  std::mt19937_64 rng(40);
  std::normal_distribution<double> g;
  std::vector<Vector> pts(8, Vector(2)), img(8, Vector(2));
  for (int i = 0; i < 8; ++i)
    for (int c = 0; c < 2; ++c) {
      pts[i][c] = g(rng);
      img[i][c] = pts[i][c] + 0.3 * g(rng);
    }
  const auto m = config_metric(PointConfig(NormedHost::lp(2, 2), pts));
  EmbeddingMap f(m, PointConfig(NormedHost::lp(2, 2), img), ProbabilityWeights::uniform(8));
  auto scaled = f;
  for (auto& x : scaled.image.points)
    for (double& v : x) v *= 7.5;
  EXPECT_NEAR(avg_distortion(f, 2, 0.5), avg_distortion(scaled, 2, 0.5), 1e-12);
  EXPECT_GE(avg_distortion(f, 2, 1.0), 1.0);
}

TEST(DimCertificate, ThreeCube) {
  const auto c = dim_certificate(cube_points(3), graph_kernel(hypercube(3)), 1);
  EXPECT_NEAR(c.gap, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.ratio, 1.5, 1e-12);
  EXPECT_NEAR(c.exponent, 1.0, 1e-12);
  EXPECT_NEAR(c.bound, std::numbers::e, 1e-12);
}

TEST(DimCertificate, IdenticalPoints) {
  PointConfig x(NormedHost::lp(2, 2), std::vector<Vector>(4, Vector{1, 1}));
  EXPECT_DOUBLE_EQ(dim_certificate(x, graph_kernel(cycle(4)), 2).bound, 1.0);
}

TEST(Expander, KnownValues) {
  EXPECT_NEAR(expander_avg_lower(hypercube(4), 0.5).bound, 1.0, 1e-12);
  for (std::size_t n : {3u, 8u, 20u}) EXPECT_NEAR(expander_avg_lower(complete(n), 1.0).bound, 1.0, 1e-12);
  const auto s = expander_avg_lower(hypercube(4), 0.5, true);
  EXPECT_EQ(s.kind, "expander_sobolev");
  EXPECT_NEAR(s.bound, 1.0, 1e-12);
}

TEST(Expander, SoundAgainstHilbertEmbeddings) {
  // The 1/2-snowflake of the cube is realized isometrically in Hilbert space,
  // so every lower bound must sit at or below distortion 1.
  for (int k = 2; k <= 6; ++k) {
    const auto h = hilbert_realize_snowflake(cube_points(k));
    EmbeddingMap f(config_metric(cube_points(k)), h.points, ProbabilityWeights::uniform(h.points.size()));
    const double measured = avg_distortion(f, 2, 0.5);
    EXPECT_LE(expander_avg_lower(hypercube(k), 0.5).bound, measured + 1e-9);
  }
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (auto graph : {cycle(10), complete(7), hypercube(4)}) {
    const auto m = bfs_metric(graph);
    for (int t = 0; t < 5; ++t) {
      std::vector<Vector> img(graph.size(), Vector(3));
      for (auto& x : img)
        for (double& v : x) v = g(rng);
      EmbeddingMap f(m, PointConfig(NormedHost::lp(2, 3), img), ProbabilityWeights::uniform(graph.size()));
      for (double w : {0.3, 0.5, 1.0})
        EXPECT_LE(expander_avg_lower(graph, w).bound, avg_distortion(f, 2, w) + 1e-9);
    }
  }
}

TEST(GeneralTarget, QuadraticCaseIsChainConstantBelowExpander) {
  const auto e = expander_avg_lower(hypercube(5), 0.5).bound;
  const auto c = general_target_lower(hypercube(5), 0.5, 2, 2);
  EXPECT_TRUE(c.advisory);
  EXPECT_NEAR(c.bound * 4.0, e, 1e-12);
  const auto cyc = general_target_lower(cycle(64), 0.25, 2, 2);
  EXPECT_TRUE(std::isfinite(cyc.bound));
  EXPECT_GT(cyc.bound, 0.0);
}

TEST(Enflo, IdentityEquality) {
  for (int k = 2; k <= 6; ++k) {
    auto x = cube_points(k);
    x.host = NormedHost::lp(2, k);
    const auto r = enflo_cube_check(x, k);
    const double expected = k * std::pow(2.0, k);
    EXPECT_DOUBLE_EQ(r.diagonals, expected);
    EXPECT_DOUBLE_EQ(r.edges, expected);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Enflo, RandomMapsSatisfyInequality) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::vector<Vector> pts(16, Vector(3));
    for (auto& x : pts)
      for (double& v : x) v = g(rng);
    EXPECT_TRUE(enflo_cube_check(PointConfig(NormedHost::lp(2, 3), pts), 4).pass);
  }
}

TEST(Enflo, LowerBound) {
  const auto c = enflo_lower(8, 0.25);
  EXPECT_NEAR(c.bound, std::sqrt(2.0), 1e-14);
  EXPECT_GE(c.provenance.at("expander_exact"), c.bound);
  EXPECT_NEAR(c.provenance.at("expander_exact"), expander_avg_lower(hypercube(8), 0.75).bound, 1e-10);
}

TEST(Csv, ColumnsInOrder) {
  EXPECT_EQ(certificate_csv_header(), "kind,n,gap,ratio,exponent,K,bound");
  const auto c = dim_certificate(cube_points(3), graph_kernel(hypercube(3)), 1);
  EXPECT_EQ(certificate_csv_row(c).rfind("dimension,8,", 0), 0u);
}

}  // namespace
}  // namespace avgjohn
