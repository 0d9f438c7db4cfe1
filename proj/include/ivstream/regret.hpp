#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ivstream {

/// (x^T (beta_prev - beta_true))^2, one identification-regret step.
inline double identification_increment(const Eigen::Ref<const Eigen::VectorXd>& beta_prev,
                                       const Eigen::Ref<const Eigen::VectorXd>& beta_true,
                                       const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (beta_prev.size() != beta_true.size() || beta_prev.size() != x.size()) {
    throw std::invalid_argument("identification_increment: dimension mismatch");
  }
  const double gap = x.dot(beta_prev - beta_true);
  return gap * gap;
}

/// (y - x^T beta_prev)^2 - (y - x^T beta_true)^2; may be negative stepwise.
inline double oracle_increment(double y, const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& beta_prev,
                               const Eigen::Ref<const Eigen::VectorXd>& beta_true) {
  if (beta_prev.size() != beta_true.size() || beta_prev.size() != x.size()) {
    throw std::invalid_argument("oracle_increment: dimension mismatch");
  }
  const double r_est = y - x.dot(beta_prev);
  const double r_true = y - x.dot(beta_true);
  return r_est * r_est - r_true * r_true;
}

/// Excess squared loss of a prediction sequence relative to the ridge-fitted
/// batch minimizer over the same stream.
inline double population_regret(const std::vector<Eigen::VectorXd>& xs,
                                const std::vector<double>& ys,
                                const std::vector<double>& predictions,
                                double ridge_mu = 1e-10) {
  if (xs.size() != ys.size() || xs.size() != predictions.size()) {
    throw std::invalid_argument("population_regret: sequence lengths differ");
  }
  if (xs.empty()) throw std::invalid_argument("population_regret: empty stream");
  const Eigen::Index d = xs.front().size();
  if (static_cast<Eigen::Index>(xs.size()) < d) {
    throw std::invalid_argument("population_regret: insufficient data (T < d_x)");
  }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(d, d) * ridge_mu;
  Eigen::VectorXd moment = Eigen::VectorXd::Zero(d);
  double online_loss = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    if (xs[t].size() != d) throw std::invalid_argument("population_regret: ragged covariates");
    gram.noalias() += xs[t] * xs[t].transpose();
    moment.noalias() += xs[t] * ys[t];
    const double r = ys[t] - predictions[t];
    online_loss += r * r;
  }
  const Eigen::VectorXd beta_erm = Eigen::LLT<Eigen::MatrixXd>(gram).solve(moment);
  double erm_loss = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double r = ys[t] - xs[t].dot(beta_erm);
    erm_loss += r * r;
  }
  return online_loss - erm_loss;
}

/// ||beta_hat - beta_true||_2^2.
inline double mse(const Eigen::Ref<const Eigen::VectorXd>& beta_hat,
                  const Eigen::Ref<const Eigen::VectorXd>& beta_true) {
  if (beta_hat.size() != beta_true.size()) throw std::invalid_argument("mse: dimension mismatch");
  return (beta_hat - beta_true).squaredNorm();
}

/// Coefficient of determination 1 - SS_res/SS_tot.
inline double r_squared(const std::vector<double>& y, const std::vector<double>& y_hat) {
  if (y.size() != y_hat.size()) throw std::invalid_argument("r_squared: sequence lengths differ");
  if (y.empty()) throw std::invalid_argument("r_squared: empty sequences");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_tot += (y[i] - mean) * (y[i] - mean);
    ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
  }
  if (ss_tot <= 0.0) throw std::invalid_argument("r_squared: degenerate variance (constant y)");
  return 1.0 - ss_res / ss_tot;
}

/// Streaming regret bookkeeping; the cumulative values are exact sums of the
/// logged increments.
class RegretAccumulator {
 public:
  void add(double ident_inc, double oracle_inc) {
    if (ident_inc < 0.0) throw std::invalid_argument("RegretAccumulator: negative identification increment");
    ident_cum_ += ident_inc;
    oracle_cum_ += oracle_inc;
    ++step_;
    per_step_.emplace_back(ident_inc, oracle_inc);
  }

  double ident_cum() const { return ident_cum_; }
  double oracle_cum() const { return oracle_cum_; }
  long step() const { return step_; }
  const std::vector<std::pair<double, double>>& per_step() const { return per_step_; }

 private:
  double ident_cum_ = 0.0;
  double oracle_cum_ = 0.0;
  long step_ = 0;
  std::vector<std::pair<double, double>> per_step_;
};

}  // namespace ivstream
