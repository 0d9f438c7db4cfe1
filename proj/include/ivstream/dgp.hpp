#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ivstream/rng.hpp"

namespace ivstream {

/// One observation of the two-stage model x = Theta^T z + eps, y = beta^T x + eta.
/// The latent noises are carried along for diagnostics; the structural
/// equations hold exactly by construction.
struct Sample {
  Eigen::VectorXd z;
  Eigen::VectorXd x;
  double y = 0.0;
  Eigen::VectorXd latent_eps;
  double latent_eta = 0.0;
};

enum class GaussianIvVariant { kRegression, kBandit };

/// Correlated-noise Gaussian process: z ~ N(0, I_dz), eps ~ N(0, I_dx),
/// eta = noise_scale * (eta_tilde + sum of the first corr_count eps
/// components). corr_count > 0 makes x endogenous.
struct GaussianIvConfig {
  int d_z = 50;
  int d_x = 50;
  double beta_mean = 10.0;
  int corr_count = 12;
  double noise_scale = 1.0 / std::sqrt(13.0);
  GaussianIvVariant variant = GaussianIvVariant::kRegression;

  static GaussianIvConfig regression_defaults() { return GaussianIvConfig{}; }

  static GaussianIvConfig bandit_defaults() {
    GaussianIvConfig config;
    config.corr_count = 10;
    config.noise_scale = std::sqrt(0.1);
    config.variant = GaussianIvVariant::kBandit;
    return config;
  }

  void validate() const {
    if (d_z < 1 || d_x < 1) throw std::invalid_argument("GaussianIvConfig: dimensions must be >= 1");
    if (corr_count < 0 || corr_count > d_x) {
      throw std::invalid_argument("GaussianIvConfig: corr_count must be in [0, d_x]");
    }
    if (!(noise_scale > 0)) throw std::invalid_argument("GaussianIvConfig: noise_scale must be > 0");
  }
};

/// Scalar price-sales process with a rare shared shock:
///   Price = theta*MaterialCost + rho_f*Event + eps_F
///   Sales = beta*Price + rho_s*Event + eta_S
/// Sample mapping: z = MaterialCost, x = Price, y = Sales.
struct PriceSalesConfig {
  double theta = 1.0;
  double beta = -1.0;
  double rho_f = 10.0;
  double rho_s = 10.0;
  double event_prob = 0.01;
  double eps_f_mean = 5.0;
  double eps_f_sd = 1.0;
  double eta_s_mean = 100.0;
  double eta_s_sd = 1.0;

  void validate() const {
    if (!(eps_f_sd > 0) || !(eta_s_sd > 0)) {
      throw std::invalid_argument("PriceSalesConfig: noise standard deviations must be > 0");
    }
    if (event_prob < 0.0 || event_prob > 1.0) {
      throw std::invalid_argument("PriceSalesConfig: event_prob must be in [0,1]");
    }
    if (rho_f < 0.0 || rho_s < 0.0) {
      throw std::invalid_argument("PriceSalesConfig: rho_f and rho_s must be >= 0");
    }
  }
};

struct GaussianIvModel {
  Eigen::VectorXd beta;   // d_x, components i.i.d. N(beta_mean, 1)
  Eigen::MatrixXd theta;  // d_z x d_x, entries i.i.d. N(0, 1)
};

inline GaussianIvModel draw_model(const GaussianIvConfig& config, Rng& rng) {
  config.validate();
  GaussianIvModel model;
  model.beta = Eigen::VectorXd(config.d_x);
  for (int i = 0; i < config.d_x; ++i) model.beta[i] = rng.normal(config.beta_mean, 1.0);
  model.theta = Eigen::MatrixXd(config.d_z, config.d_x);
  for (int i = 0; i < config.d_z; ++i) {
    for (int j = 0; j < config.d_x; ++j) model.theta(i, j) = rng.normal();
  }
  return model;
}

inline GaussianIvModel draw_model(const GaussianIvConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  return draw_model(config, rng);
}

inline Sample sample_regression(const GaussianIvConfig& config, const GaussianIvModel& model,
                                Rng& rng) {
  Sample sample;
  sample.z = rng.normal_vector(config.d_z);
  sample.latent_eps = rng.normal_vector(config.d_x);
  double eta = rng.normal();
  for (int i = 0; i < config.corr_count; ++i) eta += sample.latent_eps[i];
  sample.latent_eta = config.noise_scale * eta;
  sample.x = model.theta.transpose() * sample.z + sample.latent_eps;
  sample.y = model.beta.dot(sample.x) + sample.latent_eta;
  return sample;
}

inline Sample sample_price_sales(const PriceSalesConfig& config, Rng& rng) {
  const double event = rng.bernoulli(config.event_prob) ? 1.0 : 0.0;
  const double material_cost = rng.normal();
  const double eps_f = rng.normal(config.eps_f_mean, config.eps_f_sd);
  const double eta_s = rng.normal(config.eta_s_mean, config.eta_s_sd);
  Sample sample;
  sample.z = Eigen::VectorXd::Constant(1, material_cost);
  sample.latent_eps = Eigen::VectorXd::Constant(1, config.rho_f * event + eps_f);
  sample.latent_eta = config.rho_s * event + eta_s;
  sample.x = Eigen::VectorXd::Constant(1, config.theta * material_cost + sample.latent_eps[0]);
  sample.y = config.beta * sample.x[0] + sample.latent_eta;
  return sample;
}

/// Closed-form noise covariance gamma_i = E[eta * eps_i]: noise_scale for the
/// shared components, zero elsewhere.
inline Eigen::VectorXd theoretical_gamma(const GaussianIvConfig& config) {
  config.validate();
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(config.d_x);
  for (int i = 0; i < config.corr_count; ++i) gamma[i] = config.noise_scale;
  return gamma;
}

}  // namespace ivstream
