#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bopgraph/bop_model.hpp"
#include "bopgraph/errors.hpp"
#include "bopgraph/generators.hpp"
#include "bopgraph/linalg.hpp"
#include "bopgraph/path_oracle.hpp"
#include "support/oracles.hpp"

namespace bopgraph {
namespace {

Graph two_cycle() {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  return Graph::from_affinities(a);
}

TEST(BuildModel, TwoCycleClosedForm) {
  const BopModel m = build_model(two_cycle(), 1.0);
  const double e = std::exp(-1.0);
  Matrix w(2, 2);
  w << 0, e, e, 0;
  EXPECT_LE(oracle::max_abs_diff(m.weights(), w), 1e-16);
  const double scale = 1.0 / (1.0 - e * e);
  EXPECT_NEAR(m.fundamental()(0, 0), scale, 1e-14);
  EXPECT_NEAR(m.fundamental()(0, 1), scale * e, 1e-14);
  EXPECT_NEAR(m.fundamental()(0, 0), 1.156518, 1e-6);
  EXPECT_NEAR(m.fundamental()(0, 1), 0.425459, 1e-6);
  EXPECT_NEAR(m.partition(), 3.163954, 1e-6);
  EXPECT_EQ(m.fundamental_offdiag()(1, 1), 0.0);
  EXPECT_EQ(m.fundamental_diagonal()(1), m.fundamental()(1, 1));
}

TEST(BuildModel, RejectsNonPositiveTheta) {
  EXPECT_THROW(build_model(two_cycle(), 0.0), InputError);
  EXPECT_THROW(build_model(two_cycle(), -1.0), InputError);
}

TEST(BuildModel, IllConditionedSystemNamesTheta) {
  try {
    build_model(make_path(4), 1e-18);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("theta"), std::string::npos) << e.what();
  }
}

TEST(BuildModel, InvariantsOnRandomGraphs) {
  for (const Graph& g : oracle::random_corpus(30, 2, 15, 21)) {
    for (double theta : {0.1, 1.0, 5.0}) {
      const BopModel m = build_model(g, theta);
      const auto n = static_cast<Eigen::Index>(g.size());
      const Matrix& w = m.weights();
      const Matrix p = reference_transitions(g).matrix();
      EXPECT_LE(oracle::max_abs_diff(w, oracle::killed_weights(g, theta)), 1e-15);
      EXPECT_TRUE(((p - w).array() >= 0.0).all());
      EXPECT_LT(w.rowwise().sum().minCoeff(), 1.0);
      const Matrix residual = (Matrix::Identity(n, n) - w) * m.fundamental() - Matrix::Identity(n, n);
      EXPECT_LE(residual.cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_GE(m.fundamental_diagonal().minCoeff(), 1.0);
      EXPECT_GT(m.partition(), 0.0);
      EXPECT_GT(m.hitting_partition(), 0.0);
    }
  }
}

TEST(BuildModel, LargeThetaApproachesIdentity) {
  const BopModel m = build_model(make_path(5), 50.0);
  const Matrix off = m.fundamental() - Matrix::Identity(5, 5);
  EXPECT_LE(off.cwiseAbs().maxCoeff(), std::exp(-50.0));
}

TEST(BuildModel, OffDiagonalStrictlyDecreasingInTheta) {
  for (const Graph& g : oracle::random_corpus(10, 3, 8, 31)) {
    const Matrix z1 = build_model(g, 0.5).fundamental();
    const Matrix z2 = build_model(g, 1.0).fundamental();
    const Matrix z3 = build_model(g, 2.0).fundamental();
    const Matrix z4 = build_model(g, 4.0).fundamental();
    for (Eigen::Index i = 0; i < z1.rows(); ++i)
      for (Eigen::Index j = 0; j < z1.cols(); ++j) {
        if (i == j) continue;
        EXPECT_GT(z1(i, j), z2(i, j));
        EXPECT_GT(z2(i, j), z3(i, j));
        EXPECT_GT(z3(i, j), z4(i, j));
      }
  }
}

TEST(BuildModel, PermutationEquivariance) {
  for (const Graph& g : oracle::random_corpus(10, 3, 12, 41)) {
    const auto perm = oracle::random_permutation(g.size(), g.size());
    const Matrix z = build_model(g, 1.0).fundamental();
    const Matrix zp = build_model(g.permuted(perm), 1.0).fundamental();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        EXPECT_NEAR(zp(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])),
                    z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 1e-12);
  }
}

TEST(BuildModel, SymmetricGraphSymmetry) {
  // With symmetric A and C, W = D^{-1} S for a symmetric S, so D Z is
  // symmetric and Z itself is symmetric when the degrees are uniform.
  for (const Graph& g : oracle::random_corpus(20, 3, 12, 51)) {
    if (g.directed()) continue;
    const Matrix z = build_model(g, 1.0).fundamental();
    const Vector d = g.affinities().rowwise().sum();
    const Matrix scaled = d.asDiagonal() * z;
    EXPECT_LE(oracle::max_abs_diff(scaled, scaled.transpose()), 1e-12 * scaled.maxCoeff());
  }
  Matrix a = Matrix::Zero(5, 5);
  for (Eigen::Index i = 0; i < 5; ++i) a(i, (i + 1) % 5) = a((i + 1) % 5, i) = 1.0;
  const Matrix z = build_model(Graph::from_affinities(a, false), 1.0).fundamental();
  EXPECT_LE(oracle::max_abs_diff(z, z.transpose()), 1e-12);
}

TEST(BopProbabilities, TwoCycle) {
  const BopModel m = build_model(two_cycle(), 1.0);
  const Matrix p = bop_probabilities(m);
  EXPECT_NEAR(p(0, 0), 1.156518 / 3.163954, 1e-6);
  EXPECT_NEAR(p(0, 0), 0.5 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_EQ(p(0, 0), p(1, 1));
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
}

TEST(BopProbabilities, SumToOneAndNonnegative) {
  for (const Graph& g : oracle::random_corpus(20, 2, 12, 61)) {
    const Matrix p = bop_probabilities(build_model(g, 2.0));
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(HittingProbabilities, TwoCycle) {
  const HittingProbabilities h = hitting_probabilities(build_model(two_cycle(), 1.0));
  EXPECT_NEAR(h.weights(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(h.weights(0, 0), 1.0);
}

TEST(HittingProbabilities, UnitDiagonalAndNormalised) {
  for (const Graph& g : oracle::random_corpus(20, 2, 12, 71)) {
    const BopModel m = build_model(g, 0.7);
    const HittingProbabilities h = hitting_probabilities(m);
    for (Eigen::Index j = 0; j < h.weights.rows(); ++j) EXPECT_EQ(h.weights(j, j), 1.0);
    EXPECT_NEAR(h.probabilities.sum(), 1.0, 1e-12);
    EXPECT_NEAR(h.weights.sum(), m.hitting_partition(), 1e-12 * m.hitting_partition());
  }
}

TEST(PathOracle, TwoCycleGeometricSeries) {
  const PathSumEstimate all = path_sum_oracle(two_cycle(), 1.0, 0, 0, 1e-9);
  EXPECT_NEAR(all.value, 1.0 / (1.0 - std::exp(-2.0)), 1e-9);
  EXPECT_NEAR(all.value, 1.156518, 1e-6);
  EXPECT_GT(all.tail_bound, 0.0);
  EXPECT_LT(all.tail_bound, 1e-9);
  const PathSumEstimate hit = path_sum_oracle(two_cycle(), 1.0, 0, 1, 1e-9, WalkSet::kHitting);
  EXPECT_NEAR(hit.value, std::exp(-1.0), 1e-15);
}

TEST(PathOracle, PathGraphMatchesClosedForm) {
  const Graph g = make_path(3);
  const BopModel m = build_model(g, 1.0);
  const PathSumEstimate est = path_sum_oracle(g, 1.0, 0, 2, 1e-10);
  EXPECT_LE(std::abs(est.value - m.fundamental()(0, 2)), 1e-10 + est.tail_bound);
}

TEST(PathOracle, Guards) {
  const Graph big = make_path(kOracleMaxNodes + 1);
  EXPECT_THROW(path_sum_oracle(big, 1.0, 0, 1, 1e-6), InputError);
  EXPECT_THROW(path_sum_oracle(two_cycle(), 1.0, 0, 1, 0.0), InputError);
  EXPECT_THROW(path_sum_oracle(two_cycle(), 0.0, 0, 1, 1e-6), InputError);
}

TEST(PathOracle, LengthSumsMatchExplicitWalkListing) {
  for (const Graph& g : oracle::random_corpus(12, 2, 6, 81)) {
    for (bool hitting : {false, true}) {
      const WalkSet set = hitting ? WalkSet::kHitting : WalkSet::kAll;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
          const auto dp = path_weight_by_length(g, 0.8, i, j, 6, set);
          const auto listed = oracle::enumerate_walks(g, 0.8, i, j, 6, hitting);
          ASSERT_EQ(dp.size(), listed.size());
          for (std::size_t l = 0; l < dp.size(); ++l)
            EXPECT_NEAR(dp[l], listed[l], 1e-14) << "length " << l;
        }
    }
  }
}

TEST(PathOracle, AgreesWithFundamentalMatrix) {
  const auto corpus = oracle::random_corpus(10, 2, 6, 91);
  for (const Graph& g : corpus)
    for (double theta : {0.1, 1.0, 5.0}) {
      const BopModel m = build_model(g, theta);
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
          const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
          const PathSumEstimate all = path_sum_oracle(g, theta, i, j, 1e-9);
          EXPECT_LE(std::abs(all.value - m.fundamental()(ii, jj)), 1e-6 + all.tail_bound);
          const PathSumEstimate hit = path_sum_oracle(g, theta, i, j, 1e-9, WalkSet::kHitting);
          EXPECT_LE(std::abs(hit.value - m.fundamental()(ii, jj) / m.fundamental()(jj, jj)),
                    1e-6 + hit.tail_bound);
        }
    }
}

TEST(GuardedLu, SolvesAndDetectsSingularity) {
  Matrix a(2, 2);
  a << 4, 1, 2, 3;
  const GuardedLu lu(a, "test system");
  const Matrix inv = lu.inverse();
  EXPECT_LE(oracle::max_abs_diff(a * inv, Matrix::Identity(2, 2)), 1e-15);
  Matrix singular(2, 2);
  singular << 1, 2, 2, 4;
  EXPECT_THROW(GuardedLu(singular, "singular"), NumericalError);
}

}  // namespace
}  // namespace bopgraph
