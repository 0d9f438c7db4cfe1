#include "ivstream/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gtest/gtest.h"
#include "ivstream/rng.hpp"

namespace ivstream {
namespace {

TEST(PosDefInit, IdentityCase) {
  PosDefState state(2, 1.0);
  EXPECT_TRUE(state.matrix().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_TRUE(state.inverse().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_DOUBLE_EQ(state.logdet(), 0.0);
}

TEST(PosDefInit, LogdetOfSmallRidge) {
  PosDefState state(3, 0.1);
  EXPECT_NEAR(state.logdet(), 3.0 * std::log(0.1), 1e-12);
  EXPECT_NEAR(state.logdet(), -6.907755278982137, 1e-9);
}

TEST(PosDefInit, ScalarCase) {
  PosDefState state(1, 2.0);
  EXPECT_DOUBLE_EQ(state.matrix()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(state.inverse()(0, 0), 0.5);
  EXPECT_NEAR(state.logdet(), std::log(2.0), 1e-15);
}

TEST(PosDefInit, RejectsBadArguments) {
  EXPECT_THROW(PosDefState(0, 1.0), std::invalid_argument);
  EXPECT_THROW(PosDefState(2, 0.0), std::invalid_argument);
  EXPECT_THROW(PosDefState(2, -1.0), std::invalid_argument);
}

TEST(RankOneUpdate, AnalyticOnIdentity) {
  PosDefState state(2, 1.0);
  Eigen::VectorXd v(2);
  v << 1.0, 0.0;
  state.rank_one_update(v);
  Eigen::MatrixXd expected_inv(2, 2);
  expected_inv << 0.5, 0.0, 0.0, 1.0;
  EXPECT_TRUE(state.inverse().isApprox(expected_inv, 1e-12));
  EXPECT_NEAR(state.logdet(), std::log(2.0), 1e-12);
}

TEST(RankOneUpdate, ZeroVectorOnlyAdvancesCounter) {
  PosDefState state(3, 0.5);
  const Eigen::MatrixXd before = state.matrix();
  const double logdet_before = state.logdet();
  state.rank_one_update(Eigen::VectorXd::Zero(3));
  EXPECT_TRUE(state.matrix().isApprox(before));
  EXPECT_DOUBLE_EQ(state.logdet(), logdet_before);
  EXPECT_EQ(state.updates_since_refresh(), 1);
}

TEST(RankOneUpdate, DimensionMismatchThrows) {
  PosDefState state(3, 1.0);
  EXPECT_THROW(state.rank_one_update(Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

// Direct-inversion oracle: after a random update sequence the maintained
// inverse must match inverting the accumulated matrix from scratch.
TEST(RankOneUpdate, MatchesDirectInversionOracle) {
  Rng rng(17);
  PosDefState state(5, 0.3);
  Eigen::MatrixXd direct = Eigen::MatrixXd::Identity(5, 5) * 0.3;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd v = rng.normal_vector(5);
    state.rank_one_update(v);
    direct += v * v.transpose();
  }
  const Eigen::MatrixXd direct_inv = direct.inverse();
  EXPECT_LT((state.inverse() - direct_inv).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((state.matrix() - direct).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(state.logdet(), std::log(direct.determinant()), 1e-8);
}

TEST(QuadNorm, EuclideanWhenIdentity) {
  PosDefState state(2, 1.0);
  Eigen::VectorXd x(2);
  x << 3.0, 4.0;
  EXPECT_DOUBLE_EQ(state.quad_norm(x), 5.0);
  EXPECT_DOUBLE_EQ(state.quad_norm(Eigen::VectorXd::Zero(2)), 0.0);
}

TEST(QuadNorm, DiagonalInverseCase) {
  PosDefState state = PosDefState::from_matrix((Eigen::Vector2d(3.0, 0.0)).asDiagonal(), 1.0);
  // M = diag(4, 1)
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  EXPECT_NEAR(state.quad_norm(x, /*use_inverse=*/true), std::sqrt(0.25 + 1.0), 1e-12);
  EXPECT_NEAR(state.quad_norm(x, true), 1.118033988749895, 1e-12);
}

TEST(QuadNorm, DimensionMismatchThrows) {
  PosDefState state(2, 1.0);
  EXPECT_THROW(state.quad_norm(Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

// Cauchy-Schwarz: ||x||_M * ||x||_{M^-1} >= ||x||_2^2.
TEST(Invariants, CauchySchwarzLowerBound) {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    PosDefState state(4, 0.05 + rng.uniform());
    const int updates = static_cast<int>(rng.uniform() * 8);
    for (int i = 0; i < updates; ++i) state.rank_one_update(rng.normal_vector(4));
    const Eigen::VectorXd x = rng.normal_vector(4);
    const double lhs = state.quad_norm(x) * state.quad_norm(x, true);
    EXPECT_GE(lhs, x.squaredNorm() - 1e-9 * (1.0 + lhs));
  }
}

TEST(Invariants, LogdetNonDecreasingAndMatrixAdditive) {
  Rng rng(9);
  PosDefState state(3, 0.7);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(3, 3) * 0.7;
  double last_logdet = state.logdet();
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd v = rng.normal_vector(3);
    state.rank_one_update(v);
    sum += v * v.transpose();
    EXPECT_GE(state.logdet(), last_logdet);
    last_logdet = state.logdet();
  }
  EXPECT_LT((state.matrix() - sum).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Invariants, RefreshPreservesMatrixAndTightensInverse) {
  Rng rng(23);
  PosDefState state(4, 0.2);
  for (int i = 0; i < 100; ++i) state.rank_one_update(rng.normal_vector(4));
  const Eigen::MatrixXd m_before = state.matrix();
  state.refresh();
  EXPECT_TRUE(state.matrix().isApprox(m_before));
  EXPECT_LT((state.matrix() * state.inverse() - Eigen::MatrixXd::Identity(4, 4))
                .cwiseAbs()
                .maxCoeff(),
            1e-8);
  EXPECT_NEAR(state.logdet(), std::log(state.matrix().determinant()),
              1e-8 * std::abs(state.logdet()) + 1e-10);
  EXPECT_EQ(state.updates_since_refresh(), 0);
}

TEST(Invariants, AutomaticRefreshKeepsInverseTight) {
  Rng rng(31);
  PosDefState state(3, 1.0);
  for (int i = 0; i < 2 * PosDefState::kRefreshInterval + 10; ++i) {
    state.rank_one_update(rng.normal_vector(3) * 0.5);
  }
  EXPECT_LT(state.updates_since_refresh(), PosDefState::kRefreshInterval);
  EXPECT_LT((state.matrix() * state.inverse() - Eigen::MatrixXd::Identity(3, 3))
                .cwiseAbs()
                .maxCoeff(),
            1e-6);
}

TEST(Invariants, SymmetryMaintained) {
  Rng rng(5);
  PosDefState state(6, 0.4);
  for (int i = 0; i < 300; ++i) state.rank_one_update(rng.normal_vector(6));
  const Eigen::MatrixXd& m = state.matrix();
  const double scale = m.cwiseAbs().maxCoeff();
  EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-10 * scale);
}

TEST(Solve, RefinedSolveIsAccurate) {
  Rng rng(77);
  PosDefState state(5, 1e-3);
  for (int i = 0; i < 40; ++i) state.rank_one_update(rng.normal_vector(5));
  const Eigen::VectorXd rhs = rng.normal_vector(5);
  const Eigen::VectorXd u = state.solve(rhs);
  EXPECT_LT((state.matrix() * u - rhs).norm(), 1e-10 * rhs.norm());
}

}  // namespace
}  // namespace ivstream
