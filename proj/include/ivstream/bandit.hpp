#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ivstream/confidence.hpp"
#include "ivstream/dgp.hpp"
#include "ivstream/estimators.hpp"

namespace ivstream {

/// Per-round action set: covariates for every arm, instruments revealed only
/// for the chosen arm (rows index arms).
struct ArmContexts {
  Eigen::MatrixXd xs;  // K x d_x
  Eigen::MatrixXd zs;  // K x d_z
  int arms() const { return static_cast<int>(xs.rows()); }
};

/// Realized draw for one round, including the latent rewards the environment
/// uses to score the policy.
struct RoundDraw {
  ArmContexts contexts;
  Eigen::VectorXd mean_reward;  // beta^T x_a per arm
  Eigen::VectorXd noise;        // eta_a per arm
  int best_arm = 0;             // argmax of realized mean reward
};

struct RoundRecordLite {
  int chosen_arm = -1;
  double reward = 0.0;
  double pseudo_regret = 0.0;
  double prediction = 0.0;
};

/// Stochastic environment of the correlated-noise process with K arms whose
/// contexts are resampled i.i.d. each round.
class BanditEnv {
 public:
  BanditEnv(GaussianIvConfig config, int num_arms, GaussianIvModel model)
      : config_(std::move(config)), num_arms_(num_arms), model_(std::move(model)) {
    config_.validate();
    if (num_arms_ < 1) throw std::invalid_argument("BanditEnv: need at least one arm");
  }

  const GaussianIvModel& model() const { return model_; }
  const GaussianIvConfig& config() const { return config_; }
  int num_arms() const { return num_arms_; }

  RoundDraw draw_round(Rng& rng) const {
    RoundDraw draw;
    draw.contexts.xs.resize(num_arms_, config_.d_x);
    draw.contexts.zs.resize(num_arms_, config_.d_z);
    draw.mean_reward.resize(num_arms_);
    draw.noise.resize(num_arms_);
    for (int a = 0; a < num_arms_; ++a) {
      const Sample s = sample_regression(config_, model_, rng);
      draw.contexts.zs.row(a) = s.z;
      draw.contexts.xs.row(a) = s.x;
      draw.mean_reward[a] = model_.beta.dot(s.x);
      draw.noise[a] = s.latent_eta;
      if (draw.mean_reward[a] > draw.mean_reward[draw.best_arm]) draw.best_arm = a;
    }
    return draw;
  }

 private:
  GaussianIvConfig config_;
  int num_arms_;
  GaussianIvModel model_;
};

/// Optimistic index over a candidate arm set; ties go to the lowest index.
template <typename IndexFn>
int argmax_arm(int num_arms, IndexFn&& index) {
  if (num_arms < 1) throw std::invalid_argument("select: empty arm set");
  int best = 0;
  double best_value = index(0);
  for (int a = 1; a < num_arms; ++a) {
    const double value = index(a);
    if (value > best_value) {
      best = a;
      best_value = value;
    }
  }
  return best;
}

/// Two-stage optimistic policy: index_a = <x_a, beta> + sqrt(b'(logdet G_z)) ||x_a||_{H^-1}.
/// Before the second stage is informative the mu-regularized design makes the
/// bonus dominate, giving pure-exploration indices.
class OfulIvPolicy {
 public:
  OfulIvPolicy(O2slsEstimator estimator, ConfidenceParams conf)
      : estimator_(std::move(estimator)), conf_(std::move(conf)) {}

  int select(const ArmContexts& arms) const {
    if (arms.arms() < 1) throw std::invalid_argument("OfulIvPolicy::select: empty arm set");
    const double bonus_scale = std::sqrt(radius_b_prime(conf_, estimator_.gz().logdet()));
    const auto& design = estimator_.design();
    return argmax_arm(arms.arms(), [&](int a) {
      const Eigen::VectorXd x = arms.xs.row(a);
      return estimator_.predict(x) + bonus_scale * design.quad_norm(x, /*use_inverse=*/true);
    });
  }

  void update(const Eigen::Ref<const Eigen::VectorXd>& z,
              const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
    estimator_.ingest(z, x, y);
    ++round_;
  }

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const { return estimator_.predict(x); }
  const O2slsEstimator& estimator() const { return estimator_; }
  const Eigen::VectorXd& beta() const { return estimator_.beta(); }
  long round() const { return round_; }

 private:
  O2slsEstimator estimator_;
  ConfidenceParams conf_;
  long round_ = 0;
};

/// Single-stage optimistic baseline on (x, y) with the determinant radius
/// computed from its own design matrix.
class OfulPolicy {
 public:
  OfulPolicy(RidgeEstimator estimator, ConfidenceParams conf)
      : estimator_(std::move(estimator)), conf_(std::move(conf)) {}

  int select(const ArmContexts& arms) const {
    if (arms.arms() < 1) throw std::invalid_argument("OfulPolicy::select: empty arm set");
    const double bonus_scale = std::sqrt(radius_b_prime(conf_, estimator_.design().logdet()));
    const auto& design = estimator_.design();
    return argmax_arm(arms.arms(), [&](int a) {
      const Eigen::VectorXd x = arms.xs.row(a);
      return estimator_.predict(x) + bonus_scale * design.quad_norm(x, /*use_inverse=*/true);
    });
  }

  void update(const Eigen::Ref<const Eigen::VectorXd>& /*z*/,
              const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
    estimator_.ingest(x, y);
    ++round_;
  }

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const { return estimator_.predict(x); }
  const RidgeEstimator& estimator() const { return estimator_; }
  const Eigen::VectorXd& beta() const { return estimator_.beta(); }
  long round() const { return round_; }

 private:
  RidgeEstimator estimator_;
  ConfidenceParams conf_;
  long round_ = 0;
};

/// One protocol round: sample contexts, select, reveal (z, y) for the chosen
/// arm, ingest, and score pseudo-regret against the realized best arm.
template <typename Policy>
RoundRecordLite bandit_round(const BanditEnv& env, Policy& policy, Rng& rng) {
  const RoundDraw draw = env.draw_round(rng);
  return bandit_round_on(draw, env, policy);
}

/// Same as bandit_round but on a pre-drawn round, so several policies can be
/// scored against identical context tables.
template <typename Policy>
RoundRecordLite bandit_round_on(const RoundDraw& draw, const BanditEnv& env, Policy& policy) {
  RoundRecordLite record;
  const int chosen = policy.select(draw.contexts);
  const Eigen::VectorXd x = draw.contexts.xs.row(chosen);
  const Eigen::VectorXd z = draw.contexts.zs.row(chosen);
  record.chosen_arm = chosen;
  record.prediction = policy.predict(x);
  record.reward = draw.mean_reward[chosen] + draw.noise[chosen];
  record.pseudo_regret =
      env.model().beta.dot(Eigen::VectorXd(draw.contexts.xs.row(draw.best_arm))) -
      env.model().beta.dot(x);
  policy.update(z, x, record.reward);
  return record;
}

}  // namespace ivstream
