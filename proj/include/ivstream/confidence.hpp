#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "ivstream/linalg.hpp"

namespace ivstream {

/// Scalars entering the second-stage confidence-ellipsoid radii.
struct ConfidenceParams {
  int d_z;
  double sigma_eta;  // sub-Gaussian scale of the second-stage noise
  double lambda;     // first-stage ridge
  double L_z;        // norm bound ||z||_2 <= L_z
  double delta;      // failure probability, in (0,1)

  ConfidenceParams(int d_z_, double sigma_eta_, double lambda_, double L_z_, double delta_)
      : d_z(d_z_), sigma_eta(sigma_eta_), lambda(lambda_), L_z(L_z_), delta(delta_) {
    if (d_z < 1) throw std::invalid_argument("ConfidenceParams: d_z must be >= 1");
    if (!(sigma_eta > 0)) throw std::invalid_argument("ConfidenceParams: sigma_eta must be > 0");
    if (!(lambda > 0)) throw std::invalid_argument("ConfidenceParams: lambda must be > 0");
    if (!(L_z > 0)) throw std::invalid_argument("ConfidenceParams: L_z must be > 0");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("ConfidenceParams: delta must be in (0,1)");
  }
};

enum class RadiusConstant {
  kAppendix,  // 2 d_z sigma^2 log(...)   (default)
  kMainText,  // (d_z sigma^2 / 4) log(...)  kept for comparison
};

/// Squared ellipsoid radius b_t(delta) = 2 d_z sigma^2 log((1 + t L^2/(d_z lambda))/delta).
/// Strictly increasing in t. Callers take the square root.
inline double radius_b(const ConfidenceParams& params, long t,
                       RadiusConstant constant = RadiusConstant::kAppendix) {
  if (t < 0) throw std::invalid_argument("radius_b: t must be >= 0");
  const double log_arg =
      (1.0 + static_cast<double>(t) * params.L_z * params.L_z / (params.d_z * params.lambda)) /
      params.delta;
  const double scale = constant == RadiusConstant::kAppendix
                           ? 2.0 * params.d_z * params.sigma_eta * params.sigma_eta
                           : params.d_z * params.sigma_eta * params.sigma_eta / 4.0;
  return scale * std::log(log_arg);
}

/// Squared determinant-based radius
/// b'_t(delta) = 2 sigma^2 log(det(G_z,t)^{1/2} lambda^{-d_z/2} / delta),
/// taking the design log-determinant directly.
inline double radius_b_prime(const ConfidenceParams& params, double logdet_gz) {
  const double floor = params.d_z * std::log(params.lambda);
  const double slack = 1e-9 * (1.0 + std::abs(floor));
  if (logdet_gz < floor - slack) {
    throw std::invalid_argument("radius_b_prime: logdet below the initial design's value");
  }
  const double half_logdet_ratio = 0.5 * (std::max(logdet_gz, floor) - floor);
  return 2.0 * params.sigma_eta * params.sigma_eta *
         (half_logdet_ratio + std::log(1.0 / params.delta));
}

/// Membership test ||beta_hat - beta||_H^2 <= radius_sq.
inline bool ellipsoid_contains(const Eigen::Ref<const Eigen::VectorXd>& beta_hat,
                               const PosDefState& design, double radius_sq,
                               const Eigen::Ref<const Eigen::VectorXd>& beta) {
  if (beta_hat.size() != beta.size()) {
    throw std::invalid_argument("ellipsoid_contains: center and candidate dimensions differ");
  }
  const double dist = design.quad_norm(beta_hat - beta, /*use_inverse=*/false);
  return dist * dist <= radius_sq;
}

}  // namespace ivstream
