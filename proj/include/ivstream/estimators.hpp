#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ivstream/errors.hpp"
#include "ivstream/linalg.hpp"

namespace ivstream {

/// Multi-output first-stage ridge: Theta_hat = (lambda I + Z^T Z)^-1 Z^T X,
/// maintained incrementally from (z, x) pairs.
struct FirstStageState {
  FirstStageState(Eigen::Index d_z, Eigen::Index d_x, double lambda)
      : gz(d_z, lambda),
        s_zx(Eigen::MatrixXd::Zero(d_z, d_x)),
        theta_hat(Eigen::MatrixXd::Zero(d_z, d_x)),
        steps(0) {}

  void ingest(const Eigen::Ref<const Eigen::VectorXd>& z,
              const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (z.size() != s_zx.rows() || x.size() != s_zx.cols()) {
      throw std::invalid_argument("FirstStageState::ingest: dimension mismatch");
    }
    gz.rank_one_update(z);
    s_zx.noalias() += z * x.transpose();
    theta_hat.noalias() = gz.inverse() * s_zx;
    ++steps;
  }

  PosDefState gz;           // G_z = lambda I + sum z z^T
  Eigen::MatrixXd s_zx;     // sum z x^T
  Eigen::MatrixXd theta_hat;
  long steps;
};

enum class O2slsMode { kExact, kFrozen };

/// Streaming two-stage least squares.
///
/// Exact mode re-solves the second stage from sufficient statistics each step:
///   beta_t = (Theta_hat_t^T G_z,t Theta_hat_t + mu_t I)^-1 Theta_hat_t^T sum z_s y_s,
/// which reproduces the batch estimator at every t.
///
/// Frozen mode runs the O(d^2) recursion on frozen predictions
/// xhat_t = Theta_hat_{t-1}^T z_t:
///   beta_t = beta_{t-1} - G_xhat,t^-1 xhat_t xhat_t^T beta_{t-1} + G_xhat,t^-1 xhat_t y_t,
/// equivalent by induction to (mu I + sum xhat xhat^T)^-1 sum xhat y.
///
/// The second-stage ridge is mu_t = max(mu, 1e-10 * max(1, trace(H_t)/d_x)):
/// a scale-aware numerical floor always applies, and a caller-supplied mu
/// acts as a fixed ridge on top of it.
class O2slsEstimator {
 public:
  static constexpr double kMuFloorBase = 1e-10;

  O2slsEstimator(Eigen::Index d_z, Eigen::Index d_x, double lambda, double mu = 0.0,
                 O2slsMode mode = O2slsMode::kExact)
      : first_(d_z, d_x, lambda),
        s_zy_(Eigen::VectorXd::Zero(d_z)),
        design_(d_x, std::max(mu, kMuFloorBase)),
        beta_(Eigen::VectorXd::Zero(d_x)),
        mode_(mode),
        mu_(mu) {
    if (mu < 0.0) throw std::invalid_argument("O2slsEstimator: mu must be >= 0");
  }

  Eigen::Index d_z() const { return first_.s_zx.rows(); }
  Eigen::Index d_x() const { return first_.s_zx.cols(); }
  O2slsMode mode() const { return mode_; }
  long steps() const { return first_.steps; }
  const Eigen::VectorXd& beta() const { return beta_; }
  const Eigen::MatrixXd& theta_hat() const { return first_.theta_hat; }
  const FirstStageState& first_stage() const { return first_; }
  const PosDefState& gz() const { return first_.gz; }
  const Eigen::VectorXd& s_zy() const { return s_zy_; }

  /// Second-stage design: exact mode holds H_t + mu_t I, frozen mode holds
  /// mu I + sum xhat xhat^T.
  const PosDefState& design() const { return design_; }

  double second_stage_ridge() const {
    return std::max(mu_, kMuFloorBase * std::max(1.0, last_trace_ / static_cast<double>(d_x())));
  }

  /// beta_{t-1}^T x with the current (pre-ingest) estimate; beta_0 = 0.
  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != d_x()) throw std::invalid_argument("O2slsEstimator::predict: dimension mismatch");
    return beta_.dot(x);
  }

  void ingest(const Eigen::Ref<const Eigen::VectorXd>& z,
              const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
    if (z.size() != d_z() || x.size() != d_x()) {
      throw std::invalid_argument("O2slsEstimator::ingest: dimension mismatch");
    }
    if (mode_ == O2slsMode::kFrozen) {
      // Frozen prediction uses the first stage from the previous step.
      const Eigen::VectorXd xhat = first_.theta_hat.transpose() * z;
      first_.ingest(z, x);
      s_zy_.noalias() += z * y;
      design_.rank_one_update(xhat);
      const Eigen::VectorXd gain = design_.inverse() * xhat;
      beta_.noalias() += gain * (y - xhat.dot(beta_));
      return;
    }
    first_.ingest(z, x);
    s_zy_.noalias() += z * y;
    resolve_exact();
  }

 private:
  void resolve_exact() {
    Eigen::MatrixXd h = first_.theta_hat.transpose() * first_.gz.matrix() * first_.theta_hat;
    last_trace_ = h.trace();
    const double mu_t = second_stage_ridge();
    design_ = PosDefState::from_matrix(h, mu_t);
    const Eigen::VectorXd rhs = first_.theta_hat.transpose() * s_zy_;
    beta_ = design_.solve(rhs);
    if (!beta_.allFinite()) {
      throw NumericalError("O2slsEstimator: second-stage solve produced non-finite beta; trace(H)=" +
                           std::to_string(last_trace_) + " mu=" + std::to_string(mu_t) +
                           " logdet=" + std::to_string(design_.logdet()));
    }
  }

  FirstStageState first_;
  Eigen::VectorXd s_zy_;
  PosDefState design_;
  Eigen::VectorXd beta_;
  O2slsMode mode_;
  double mu_;
  double last_trace_ = 0.0;
};

/// Online ridge: beta = (lambda I + X^T X)^-1 X^T y, predictions use data
/// through t-1.
class RidgeEstimator {
 public:
  RidgeEstimator(Eigen::Index d_x, double lambda)
      : gx_(d_x, lambda), s_xy_(Eigen::VectorXd::Zero(d_x)), beta_(Eigen::VectorXd::Zero(d_x)) {}

  Eigen::Index d_x() const { return s_xy_.size(); }
  long steps() const { return steps_; }
  const Eigen::VectorXd& beta() const { return beta_; }
  const PosDefState& design() const { return gx_; }

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != d_x()) throw std::invalid_argument("RidgeEstimator::predict: dimension mismatch");
    return beta_.dot(x);
  }

  void ingest(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
    if (x.size() != d_x()) throw std::invalid_argument("RidgeEstimator::ingest: dimension mismatch");
    gx_.rank_one_update(x);
    s_xy_.noalias() += x * y;
    beta_ = gx_.solve(s_xy_);
    ++steps_;
  }

 protected:
  PosDefState gx_;
  Eigen::VectorXd s_xy_;
  Eigen::VectorXd beta_;
  long steps_ = 0;
};

/// Forecaster whose prediction adds the incoming covariate to the design
/// before inverting: x^T (X^T X + x x^T + lambda I)^-1 X^T y. Accumulators
/// match RidgeEstimator and only move on ingest.
class VawrEstimator : public RidgeEstimator {
 public:
  using RidgeEstimator::RidgeEstimator;

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != d_x()) throw std::invalid_argument("VawrEstimator::predict: dimension mismatch");
    // Sherman-Morrison on the stored inverse: x^T (G + x x^T)^-1 s = u / (1 + q).
    const Eigen::VectorXd w = gx_.inverse() * x;
    const double u = w.dot(s_xy_);
    const double q = x.dot(w);
    return u / (1.0 + q);
  }
};

}  // namespace ivstream
