#include "ivstream/bandit.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "ivstream/rng.hpp"

namespace ivstream {
namespace {

GaussianIvConfig small_config() {
  GaussianIvConfig config = GaussianIvConfig::bandit_defaults();
  config.d_z = config.d_x = 4;
  config.corr_count = 2;
  config.beta_mean = 2.0;
  return config;
}

ConfidenceParams params_for(const GaussianIvConfig& config, double lambda) {
  const double sigma = config.noise_scale * std::sqrt(1.0 + config.corr_count);
  return ConfidenceParams(config.d_z, sigma, lambda,
                          std::sqrt(static_cast<double>(config.d_z)), 0.05);
}

TEST(OfulIvSelect, SingleArmAlwaysZero) {
  const GaussianIvConfig config = small_config();
  Rng rng(60);
  BanditEnv env(config, 1, draw_model(config, rng));
  OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params_for(config, 0.1));
  for (int t = 0; t < 5; ++t) {
    const RoundRecordLite rec = bandit_round(env, policy, rng);
    EXPECT_EQ(rec.chosen_arm, 0);
  }
}

TEST(OfulIvSelect, EmptyArmSetThrows) {
  const GaussianIvConfig config = small_config();
  OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params_for(config, 0.1));
  ArmContexts empty;
  empty.xs.resize(0, 4);
  empty.zs.resize(0, 4);
  EXPECT_THROW(policy.select(empty), std::invalid_argument);
}

// delta -> 1 shrinks the bonus toward zero; with a trained estimator the
// selection approaches the greedy argmax of <x_a, beta_hat>.
TEST(OfulIvSelect, GreedyLimitAsRadiusVanishes) {
  GaussianIvConfig config = small_config();
  config.corr_count = 0;
  Rng rng(61);
  const GaussianIvModel model = draw_model(config, rng);
  BanditEnv env(config, 6, model);
  const double sigma = config.noise_scale;
  O2slsEstimator est(4, 4, 0.1);
  Rng train(62);
  for (int t = 0; t < 4000; ++t) {
    const Sample s = sample_regression(config, model, train);
    est.ingest(s.z, s.x, s.y);
  }
  OfulIvPolicy policy(std::move(est), ConfidenceParams(4, sigma, 0.1, 2.0, 1.0 - 1e-12));
  for (int t = 0; t < 50; ++t) {
    const RoundDraw draw = env.draw_round(rng);
    const int chosen = policy.select(draw.contexts);
    int greedy = 0;
    for (int a = 1; a < 6; ++a) {
      if (policy.beta().dot(Eigen::VectorXd(draw.contexts.xs.row(a))) >
          policy.beta().dot(Eigen::VectorXd(draw.contexts.xs.row(greedy)))) {
        greedy = a;
      }
    }
    EXPECT_EQ(chosen, greedy);
  }
}

// Exhaustive-enumeration oracle: the returned arm maximizes the index.
TEST(OfulIvSelect, MatchesBruteForceIndex) {
  const GaussianIvConfig config = small_config();
  Rng rng(63);
  const GaussianIvModel model = draw_model(config, rng);
  BanditEnv env(config, 20, model);
  const ConfidenceParams params = params_for(config, 0.1);
  OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params);
  for (int t = 0; t < 60; ++t) {
    const RoundDraw draw = env.draw_round(rng);
    const int chosen = policy.select(draw.contexts);
    const double bonus = std::sqrt(radius_b_prime(params, policy.estimator().gz().logdet()));
    int best = 0;
    double best_value = -1e300;
    for (int a = 0; a < 20; ++a) {
      const Eigen::VectorXd x = draw.contexts.xs.row(a);
      const double value = policy.estimator().predict(x) +
                           bonus * policy.estimator().design().quad_norm(x, true);
      if (value > best_value) {
        best_value = value;
        best = a;
      }
    }
    EXPECT_EQ(chosen, best);
    bandit_round_on(draw, env, policy);
  }
}

TEST(OfulSelect, MatchesBruteForceIndexAndSingleArm) {
  const GaussianIvConfig config = small_config();
  Rng rng(64);
  const GaussianIvModel model = draw_model(config, rng);
  BanditEnv env(config, 12, model);
  const ConfidenceParams params(config.d_x,
                                config.noise_scale * std::sqrt(1.0 + config.corr_count), 0.1,
                                2.0, 0.05);
  OfulPolicy policy(RidgeEstimator(4, 0.1), params);
  for (int t = 0; t < 60; ++t) {
    const RoundDraw draw = env.draw_round(rng);
    const int chosen = policy.select(draw.contexts);
    const double bonus = std::sqrt(radius_b_prime(params, policy.estimator().design().logdet()));
    int best = 0;
    double best_value = -1e300;
    for (int a = 0; a < 12; ++a) {
      const Eigen::VectorXd x = draw.contexts.xs.row(a);
      const double value = policy.estimator().predict(x) +
                           bonus * policy.estimator().design().quad_norm(x, true);
      if (value > best_value) {
        best_value = value;
        best = a;
      }
    }
    EXPECT_EQ(chosen, best);
    bandit_round_on(draw, env, policy);
  }
}

// A degenerate instrument (z = x, first stage learns identity) makes the
// two-stage policy match the one-stage one on the same stream.
TEST(OfulSelect, DegenerateInstrumentCoincidesWithOfulIv) {
  Rng rng(65);
  const int d = 3;
  Eigen::VectorXd beta(d);
  beta << 1.0, -0.5, 2.0;
  const ConfidenceParams params(d, 1.0, 0.1, std::sqrt(3.0), 0.05);
  OfulIvPolicy iv(O2slsEstimator(d, d, 0.1, 0.0), params);
  OfulPolicy one_stage(RidgeEstimator(d, 0.1), params);
  for (int t = 0; t < 400; ++t) {
    ArmContexts contexts;
    contexts.xs.resize(5, d);
    for (int a = 0; a < 5; ++a) contexts.xs.row(a) = rng.normal_vector(d);
    contexts.zs = contexts.xs;
    const int pick_iv = iv.select(contexts);
    const Eigen::VectorXd x = contexts.xs.row(pick_iv);
    const double y = beta.dot(x) + 0.1 * rng.normal();
    iv.update(x, x, y);
    one_stage.update(x, x, y);
  }
  // After identical training data the centers agree; selections then coincide
  // on fresh context tables.
  EXPECT_LT((iv.beta() - one_stage.beta()).norm(), 5e-2);
  int agreements = 0;
  for (int t = 0; t < 50; ++t) {
    ArmContexts contexts;
    contexts.xs.resize(5, d);
    for (int a = 0; a < 5; ++a) contexts.xs.row(a) = rng.normal_vector(d);
    contexts.zs = contexts.xs;
    if (iv.select(contexts) == one_stage.select(contexts)) ++agreements;
  }
  EXPECT_GE(agreements, 45);
}

TEST(BanditRound, OraclePolicyHasZeroRegret) {
  const GaussianIvConfig config = small_config();
  Rng rng(66);
  const GaussianIvModel model = draw_model(config, rng);
  BanditEnv env(config, 8, model);
  for (int t = 0; t < 100; ++t) {
    const RoundDraw draw = env.draw_round(rng);
    const Eigen::VectorXd best_x = draw.contexts.xs.row(draw.best_arm);
    EXPECT_DOUBLE_EQ(model.beta.dot(best_x) - draw.mean_reward[draw.best_arm], 0.0);
    // Choosing best_arm gives zero pseudo-regret by definition.
    EXPECT_DOUBLE_EQ(draw.mean_reward[draw.best_arm] - draw.mean_reward[draw.best_arm], 0.0);
  }
}

TEST(BanditRound, PseudoRegretNonnegativeAndCumulative) {
  const GaussianIvConfig config = small_config();
  Rng rng(67);
  BanditEnv env(config, 10, draw_model(config, rng));
  OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params_for(config, 0.1));
  double cum = 0.0;
  for (int t = 0; t < 200; ++t) {
    const RoundRecordLite rec = bandit_round(env, policy, rng);
    EXPECT_GE(rec.pseudo_regret, 0.0);
    cum += rec.pseudo_regret;
    EXPECT_GE(cum, 0.0);
  }
}

// A uniform-random policy pays strictly more pseudo-regret than the
// optimistic two-stage policy after burn-in.
TEST(BanditRound, RandomPolicyLosesToOfulIv) {
  const GaussianIvConfig config = small_config();
  double random_total = 0.0, policy_total = 0.0;
  for (int run = 0; run < 20; ++run) {
    Rng rng(700 + run);
    const GaussianIvModel model = draw_model(config, rng);
    BanditEnv env(config, 10, model);
    OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params_for(config, 0.1));
    Rng coin(900 + run);
    for (int t = 0; t < 300; ++t) {
      const RoundDraw draw = env.draw_round(rng);
      const int random_arm = static_cast<int>(coin.uniform() * 10);
      if (t >= 50) {
        random_total += draw.mean_reward[draw.best_arm] - draw.mean_reward[random_arm];
      }
      const RoundRecordLite rec = bandit_round_on(draw, env, policy);
      if (t >= 50) policy_total += rec.pseudo_regret;
    }
  }
  EXPECT_GT(random_total, policy_total);
}

TEST(BanditInvariants, OptimismAndMonotoneInformation) {
  const GaussianIvConfig config = small_config();
  Rng rng(68);
  BanditEnv env(config, 6, draw_model(config, rng));
  const ConfidenceParams params = params_for(config, 0.1);
  OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params);
  double last_logdet = policy.estimator().gz().logdet();
  for (int t = 0; t < 150; ++t) {
    const RoundDraw draw = env.draw_round(rng);
    const int chosen = policy.select(draw.contexts);
    const double bonus = std::sqrt(radius_b_prime(params, policy.estimator().gz().logdet()));
    const Eigen::VectorXd x_star = draw.contexts.xs.row(chosen);
    const double chosen_index = policy.estimator().predict(x_star) +
                                bonus * policy.estimator().design().quad_norm(x_star, true);
    for (int a = 0; a < 6; ++a) {
      const Eigen::VectorXd x = draw.contexts.xs.row(a);
      const double index = policy.estimator().predict(x) +
                           bonus * policy.estimator().design().quad_norm(x, true);
      EXPECT_GE(chosen_index, index - 1e-12 * std::abs(index));
    }
    bandit_round_on(draw, env, policy);
    EXPECT_GE(policy.estimator().gz().logdet(), last_logdet);
    last_logdet = policy.estimator().gz().logdet();
  }
}

TEST(BanditInvariants, PolicyDeterminismGivenSeed) {
  const GaussianIvConfig config = small_config();
  auto run_once = [&](std::uint64_t seed) {
    Rng rng(seed);
    const GaussianIvModel model = draw_model(config, rng);
    BanditEnv env(config, 7, model);
    OfulIvPolicy policy(O2slsEstimator(4, 4, 0.1), params_for(config, 0.1));
    std::vector<int> arms;
    for (int t = 0; t < 60; ++t) arms.push_back(bandit_round(env, policy, rng).chosen_arm);
    return arms;
  };
  EXPECT_EQ(run_once(123), run_once(123));
  EXPECT_NE(run_once(123), run_once(124));
}

}  // namespace
}  // namespace ivstream
