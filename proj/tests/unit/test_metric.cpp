#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "avgjohn/errors.hpp"
#include "avgjohn/metric.hpp"
#include "oracles.hpp"

namespace avgjohn {
namespace {

TEST(NormEval, EuclideanThreeFour) {
  EXPECT_DOUBLE_EQ(norm_eval(NormedHost::lp(2, 2), {3, 4}), 5.0);
}

TEST(NormEval, MaxNorm) { EXPECT_DOUBLE_EQ(norm_eval(NormedHost::lp(kInf, 3), {1, -2, 3}), 3.0); }

TEST(NormEval, FractionalExponent) {
  EXPECT_NEAR(norm_eval(NormedHost::lp(1.5, 2), {1, 1}), std::pow(2.0, 2.0 / 3.0), 1e-15);
}

TEST(NormEval, RejectsBadHosts) {
  EXPECT_THROW(NormedHost::lp(0.5, 2), ValidationError);
  EXPECT_THROW(NormedHost::lp(2, 0), ValidationError);
  EXPECT_THROW(norm_eval(NormedHost::lp(2, 2), {1, 2, 3}), ValidationError);
}

TEST(NormEval, ProductHostMatchesBlockwise) {
  const auto inner = NormedHost::lp(kInf, 2);
  const auto host = NormedHost::lp_product(1, 3, inner);
  EXPECT_EQ(host.dim(), 6u);
  // max-norms of blocks: 2, 4, 1 -> l1 sum 7
  EXPECT_DOUBLE_EQ(host.norm(Vector{1, -2, 4, 0, 0.5, 1}), 7.0);
}

TEST(NormEval, AgreesWithOracleOnRandomVectors) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (double p : {1.0, 1.3, 2.0, 3.5, kInf}) {
    for (int t = 0; t < 50; ++t) {
      Vector v(7);
      for (double& x : v) x = g(rng) * 1e3;
      EXPECT_NEAR(lp_norm(v.data(), v.size(), p), oracle::lp(v, p), 1e-12 * oracle::lp(v, p));
    }
  }
}

TEST(DistanceMatrix, DimensionMismatchRejected) {
  PointConfig c;
  c.host = NormedHost::lp(2, 2);
  c.points = {{0, 0}, {1, 2, 3}};
  EXPECT_THROW(distance_matrix(c), ValidationError);
  EXPECT_THROW(PointConfig(NormedHost::lp(2, 2), {{0, 0}, {1}}), ValidationError);
}

TEST(DistanceMatrix, MatchesOracle) {
  PointConfig c(NormedHost::lp(1, 2), {{0, 0}, {1, 2}, {-1, 1}});
  const auto d = distance_matrix(c);
  EXPECT_DOUBLE_EQ(d(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(d(1, 2), 3.0);
  EXPECT_DOUBLE_EQ(d(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(d(2, 2), 0.0);
}

TEST(FiniteMetricSpace, Validation) {
  EXPECT_NO_THROW(FiniteMetricSpace(Matrix::from_rows({{0, 1}, {1, 0}})));
  EXPECT_THROW(FiniteMetricSpace(Matrix::from_rows({{0, 1}, {2, 0}})), ValidationError);
  EXPECT_THROW(FiniteMetricSpace(Matrix::from_rows({{1, 1}, {1, 0}})), ValidationError);
  EXPECT_THROW(FiniteMetricSpace(Matrix::from_rows({{0, -1}, {-1, 0}})), ValidationError);
  EXPECT_THROW(FiniteMetricSpace(Matrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}})),
               ValidationError);
  EXPECT_THROW(FiniteMetricSpace(Matrix::from_rows({{0, 1}, {1, 0}}), {"a"}), ValidationError);
}

TEST(Snowflake, ExponentRange) {
  FiniteMetricSpace m(Matrix::from_rows({{0, 4}, {4, 0}}));
  EXPECT_DOUBLE_EQ(snowflake(m, 0.5)(0, 1), 2.0);
  EXPECT_THROW(snowflake(m, 0.0), ValidationError);
  EXPECT_THROW(snowflake(m, 1.5), ValidationError);
}

TEST(Snowflake, StaysMetric) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<Vector> pts(12, Vector(3));
  for (auto& x : pts)
    for (double& v : x) v = g(rng);
  const auto m = config_metric(PointConfig(NormedHost::lp(1, 3), pts));
  for (double w : {0.1, 0.5, 0.9}) EXPECT_LE(snowflake(m, w).triangle_defect(), 1e-12);
}

TEST(Frechet, RowsAreDistances) {
  FiniteMetricSpace m(Matrix::from_rows({{0, 1, 10}, {1, 0, 9}, {10, 9, 0}}));
  const auto j = frechet_embed(m);
  EXPECT_TRUE(std::isinf(j.host.p()));
  EXPECT_EQ(j.points[2], (Vector{10, 9, 0}));
  const auto d = distance_matrix(j);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_DOUBLE_EQ(d(a, b), m(a, b));
}

TEST(Complexification, RealVector) {
  const auto h = NormedHost::lp(3, 3);
  Vector x{1, -2, 0.5}, y{0, 0, 0};
  EXPECT_NEAR(complexification_norm(h, x, y, 256), h.norm(x), 1e-8);
}

TEST(Complexification, EuclideanUnitPair) {
  EXPECT_NEAR(complexification_norm(NormedHost::lp(2, 2), {1, 0}, {0, 1}, 64), std::sqrt(2.0), 1e-12);
}

TEST(Complexification, RejectsFewNodes) {
  EXPECT_THROW(complexification_norm(NormedHost::lp(2, 2), {1, 0}, {0, 1}, 7), ValidationError);
}

TEST(Complexification, WithinFactorOfLpCombination) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const auto h = NormedHost::lp(p, 4);
    for (int t = 0; t < 40; ++t) {
      Vector x(4), y(4);
      for (double& v : x) v = g(rng);
      for (double& v : y) v = g(rng);
      const double c = complexification_norm(h, x, y, 256);
      const double ref = std::pow(std::pow(h.norm(x), p) + std::pow(h.norm(y), p), 1.0 / p);
      EXPECT_LE(c, 4.0 * ref);
      EXPECT_GE(c, ref / 4.0);
    }
  }
}

TEST(Weights, Validation) {
  EXPECT_NO_THROW(ProbabilityWeights({0.25, 0.75}));
  EXPECT_THROW(ProbabilityWeights({0.5, 0.6}), ValidationError);
  EXPECT_THROW(ProbabilityWeights({-0.5, 1.5}), ValidationError);
  EXPECT_EQ(ProbabilityWeights({0.0, 1.0}).support(), (std::vector<std::size_t>{1}));
}

}  // namespace
}  // namespace avgjohn
