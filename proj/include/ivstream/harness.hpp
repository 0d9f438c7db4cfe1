#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ivstream/bandit.hpp"
#include "ivstream/confidence.hpp"
#include "ivstream/dgp.hpp"
#include "ivstream/estimators.hpp"
#include "ivstream/gasoline.hpp"
#include "ivstream/regret.hpp"
#include "ivstream/rng.hpp"

namespace ivstream {

enum class ExperimentKind { kRegression, kPriceSales, kBandit, kRealData };
enum class Algorithm { kO2sls, kRidge, kVawr, kOfulIv, kOful };

inline std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kRegression: return "regression";
    case ExperimentKind::kPriceSales: return "price_sales";
    case ExperimentKind::kBandit: return "bandit";
    case ExperimentKind::kRealData: return "realdata";
  }
  return "?";
}

inline std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kO2sls: return "o2sls";
    case Algorithm::kRidge: return "ridge";
    case Algorithm::kVawr: return "vawr";
    case Algorithm::kOfulIv: return "oful_iv";
    case Algorithm::kOful: return "oful";
  }
  return "?";
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kRegression;
  GaussianIvConfig gaussian = GaussianIvConfig::regression_defaults();
  PriceSalesConfig price_sales;
  std::string dataset_path;
  int num_arms = 20;
  long horizon = 1000;
  int n_runs = 30;
  std::uint64_t master_seed = 42;
  std::vector<Algorithm> algorithms = {Algorithm::kO2sls, Algorithm::kRidge};
  double lambda = 1e-3;
  double mu = 1e-10;
  double delta = 0.05;
  std::string output_path;
  bool log_beta = false;

  std::vector<std::string> validation_errors() const {
    std::vector<std::string> errors;
    if (horizon < 1) errors.push_back("T must be >= 1");
    if (n_runs < 1) errors.push_back("n_runs must be >= 1");
    if (!(lambda > 0)) errors.push_back("lambda must be > 0");
    if (mu < 0) errors.push_back("mu must be >= 0");
    if (!(delta > 0 && delta < 1)) errors.push_back("delta must be in (0,1)");
    if (algorithms.empty()) errors.push_back("algorithms must be non-empty");
    const bool bandit = kind == ExperimentKind::kBandit;
    for (Algorithm a : algorithms) {
      const bool is_policy = a == Algorithm::kOfulIv || a == Algorithm::kOful;
      if (bandit && !is_policy) {
        errors.push_back("algorithm '" + to_string(a) + "' is incompatible with kind 'bandit'");
      }
      if (!bandit && is_policy) {
        errors.push_back("algorithm '" + to_string(a) + "' is incompatible with kind '" +
                         to_string(kind) + "'");
      }
      if (kind == ExperimentKind::kRealData && a == Algorithm::kVawr) {
        errors.push_back("algorithm 'vawr' is incompatible with kind 'realdata'");
      }
    }
    if (bandit && num_arms < 1) errors.push_back("arms must be >= 1");
    if (kind == ExperimentKind::kRealData && dataset_path.empty()) {
      errors.push_back("realdata requires dgp.dataset");
    }
    if (kind == ExperimentKind::kRegression || kind == ExperimentKind::kBandit) {
      try {
        gaussian.validate();
      } catch (const std::exception& e) {
        errors.push_back(e.what());
      }
    }
    if (kind == ExperimentKind::kPriceSales) {
      try {
        price_sales.validate();
      } catch (const std::exception& e) {
        errors.push_back(e.what());
      }
    }
    return errors;
  }

  void validate_or_throw() const {
    const auto errors = validation_errors();
    if (!errors.empty()) {
      std::string joined;
      for (const auto& e : errors) joined += (joined.empty() ? "" : "; ") + e;
      throw std::invalid_argument("invalid config: " + joined);
    }
  }
};

/// Per-step log row; the unit of all CSV output.
struct RoundRecord {
  int run_id = 0;
  long t = 0;
  Algorithm algorithm = Algorithm::kO2sls;
  double prediction = 0.0;
  double ident_inc = 0.0;
  double ident_cum = 0.0;
  double oracle_inc = 0.0;
  double oracle_cum = 0.0;
  double mse = std::numeric_limits<double>::quiet_NaN();
  int chosen_arm = -1;
  double pseudo_regret = std::numeric_limits<double>::quiet_NaN();
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> beta;
};

struct AggregateCurve {
  std::vector<double> ident_mean, ident_std;
  std::vector<double> oracle_mean, oracle_std;
  std::vector<double> mse_mean, mse_std;
  std::vector<double> regret_mean, regret_std;  // cumulative pseudo-regret (bandit)
};

struct RunFailure {
  int run_id = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<RoundRecord> records;  // ordered by (algorithm, run_id, t)
  std::vector<std::pair<Algorithm, AggregateCurve>> curves;
  std::vector<RunFailure> failures;
  int completed_runs = 0;
};

/// Centers a stream by the running mean of past samples; the first sample
/// initializes the means and is emitted as a zero triple.
class StreamCenterer {
 public:
  StreamCenterer(Eigen::Index d_z, Eigen::Index d_x)
      : z_sum_(Eigen::VectorXd::Zero(d_z)), x_sum_(Eigen::VectorXd::Zero(d_x)) {}

  Sample center(const Sample& raw) {
    Sample centered = raw;
    if (count_ == 0) {
      centered.z.setZero();
      centered.x.setZero();
      centered.y = 0.0;
    } else {
      const double n = static_cast<double>(count_);
      centered.z = raw.z - z_sum_ / n;
      centered.x = raw.x - x_sum_ / n;
      centered.y = raw.y - y_sum_ / n;
    }
    z_sum_ += raw.z;
    x_sum_ += raw.x;
    y_sum_ += raw.y;
    ++count_;
    return centered;
  }

  double y_mean() const { return count_ ? y_sum_ / static_cast<double>(count_) : 0.0; }
  long count() const { return count_; }

 private:
  Eigen::VectorXd z_sum_;
  Eigen::VectorXd x_sum_;
  double y_sum_ = 0.0;
  long count_ = 0;
};

struct Diagnostics {
  double relevance = 0.0;      // sigma_min of (1/t) sum z x^T
  double exo_iv = 0.0;         // ||(1/t) sum z eta||_2
  double exo_x = 0.0;          // ||(1/t) sum x eta||_2
  double lambda_min_gz = 0.0;  // smallest eigenvalue of (1/t) sum z z^T
};

inline Diagnostics assumption_diagnostics(const std::vector<Sample>& stream) {
  if (stream.empty()) throw std::invalid_argument("assumption_diagnostics: empty stream");
  const Eigen::Index d_z = stream.front().z.size();
  const Eigen::Index d_x = stream.front().x.size();
  const auto t = static_cast<Eigen::Index>(stream.size());
  if (t < std::max(d_z, d_x)) {
    throw std::invalid_argument("assumption_diagnostics: insufficient data (t < max(d_x, d_z))");
  }
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(d_z, d_x);
  Eigen::MatrixXd gram_z = Eigen::MatrixXd::Zero(d_z, d_z);
  Eigen::VectorXd z_eta = Eigen::VectorXd::Zero(d_z);
  Eigen::VectorXd x_eta = Eigen::VectorXd::Zero(d_x);
  for (const Sample& s : stream) {
    cross.noalias() += s.z * s.x.transpose();
    gram_z.noalias() += s.z * s.z.transpose();
    z_eta.noalias() += s.z * s.latent_eta;
    x_eta.noalias() += s.x * s.latent_eta;
  }
  const double scale = 1.0 / static_cast<double>(t);
  Diagnostics diag;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross * scale);
  diag.relevance = svd.singularValues().minCoeff();
  diag.exo_iv = (z_eta * scale).norm();
  diag.exo_x = (x_eta * scale).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_z * scale);
  diag.lambda_min_gz = eig.eigenvalues().minCoeff();
  return diag;
}

struct ScalingCheck {
  std::vector<double> ratios;
  bool passed = false;
};

/// Boundedness proxy for a log^2 T regret rate: R(T)/log^2 T across horizons
/// must stay within a factor of 4.
inline ScalingCheck log2_scaling_check(const std::vector<std::pair<long, double>>& curve) {
  if (curve.size() < 3) throw std::invalid_argument("log2_scaling_check: need >= 3 horizons");
  ScalingCheck check;
  for (const auto& [horizon, regret] : curve) {
    if (horizon < 16) throw std::invalid_argument("log2_scaling_check: horizons must be >= 16");
    const double lg = std::log(static_cast<double>(horizon));
    check.ratios.push_back(regret / (lg * lg));
  }
  double lo = check.ratios.front(), hi = check.ratios.front();
  for (double r : check.ratios) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  check.passed = lo > 0.0 && hi / lo <= 4.0;
  return check;
}

inline int default_worker_count() {
  if (const char* env = std::getenv("IVSTREAM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

struct RunOutput {
  std::vector<std::vector<RoundRecord>> per_algorithm;  // [algorithm index][t-1]
};

inline RunOutput run_regression_kind(const ExperimentConfig& config, int run_id, Rng& rng) {
  const bool centered = config.kind == ExperimentKind::kPriceSales;
  Eigen::Index d_z, d_x;
  Eigen::VectorXd beta_true;
  std::optional<GaussianIvModel> model;
  if (config.kind == ExperimentKind::kRegression) {
    model = draw_model(config.gaussian, rng);
    d_z = config.gaussian.d_z;
    d_x = config.gaussian.d_x;
    beta_true = model->beta;
  } else {
    d_z = d_x = 1;
    beta_true = Eigen::VectorXd::Constant(1, config.price_sales.beta);
  }

  std::vector<std::optional<O2slsEstimator>> o2sls(config.algorithms.size());
  std::vector<std::optional<RidgeEstimator>> ridge(config.algorithms.size());
  std::vector<std::optional<VawrEstimator>> vawr(config.algorithms.size());
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    switch (config.algorithms[i]) {
      case Algorithm::kO2sls: o2sls[i].emplace(d_z, d_x, config.lambda, config.mu); break;
      case Algorithm::kRidge: ridge[i].emplace(d_x, config.lambda); break;
      case Algorithm::kVawr: vawr[i].emplace(d_x, config.lambda); break;
      default: throw std::invalid_argument("regression run: unsupported algorithm");
    }
  }

  RunOutput out;
  out.per_algorithm.resize(config.algorithms.size());
  for (auto& v : out.per_algorithm) v.reserve(config.horizon);
  StreamCenterer centerer(d_z, d_x);

  for (long t = 1; t <= config.horizon; ++t) {
    Sample raw = config.kind == ExperimentKind::kRegression
                     ? sample_regression(config.gaussian, *model, rng)
                     : sample_price_sales(config.price_sales, rng);
    const double y_mean_past = centerer.y_mean();
    const Sample s = centered ? centerer.center(raw) : raw;
    for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
      RoundRecord rec;
      rec.run_id = run_id;
      rec.t = t;
      rec.algorithm = config.algorithms[i];
      const Eigen::VectorXd* beta_state = nullptr;
      double pred = 0.0;
      switch (config.algorithms[i]) {
        case Algorithm::kO2sls:
          pred = o2sls[i]->predict(s.x);
          o2sls[i]->ingest(s.z, s.x, s.y);
          beta_state = &o2sls[i]->beta();
          break;
        case Algorithm::kRidge:
          pred = ridge[i]->predict(s.x);
          ridge[i]->ingest(s.x, s.y);
          beta_state = &ridge[i]->beta();
          break;
        case Algorithm::kVawr:
          pred = vawr[i]->predict(s.x);
          vawr[i]->ingest(s.x, s.y);
          beta_state = &vawr[i]->beta();
          break;
        default: break;
      }
      rec.ident_inc = (pred - s.x.dot(beta_true)) * (pred - s.x.dot(beta_true));
      const double r_est = s.y - pred;
      const double r_true = s.y - s.x.dot(beta_true);
      rec.oracle_inc = r_est * r_est - r_true * r_true;
      // The logged prediction is in the observable scale.
      rec.prediction = centered ? pred + y_mean_past : pred;
      rec.mse = mse(*beta_state, beta_true);
      if (!out.per_algorithm[i].empty()) {
        rec.ident_cum = out.per_algorithm[i].back().ident_cum;
        rec.oracle_cum = out.per_algorithm[i].back().oracle_cum;
      }
      rec.ident_cum += rec.ident_inc;
      rec.oracle_cum += rec.oracle_inc;
      if (config.log_beta) rec.beta.assign(beta_state->data(), beta_state->data() + beta_state->size());
      out.per_algorithm[i].push_back(std::move(rec));
    }
  }
  return out;
}

inline RunOutput run_bandit_kind(const ExperimentConfig& config, int run_id, Rng& rng) {
  const GaussianIvModel model = draw_model(config.gaussian, rng);
  BanditEnv env(config.gaussian, config.num_arms, model);
  const double sigma_eta =
      config.gaussian.noise_scale * std::sqrt(1.0 + config.gaussian.corr_count);
  const ConfidenceParams iv_params(config.gaussian.d_z, sigma_eta, config.lambda,
                                   std::sqrt(static_cast<double>(config.gaussian.d_z)),
                                   config.delta);
  const ConfidenceParams ridge_params(config.gaussian.d_x, sigma_eta, config.lambda,
                                      std::sqrt(static_cast<double>(config.gaussian.d_x)),
                                      config.delta);

  std::vector<std::optional<OfulIvPolicy>> iv_policy(config.algorithms.size());
  std::vector<std::optional<OfulPolicy>> ridge_policy(config.algorithms.size());
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    if (config.algorithms[i] == Algorithm::kOfulIv) {
      iv_policy[i].emplace(
          O2slsEstimator(config.gaussian.d_z, config.gaussian.d_x, config.lambda, config.mu),
          iv_params);
    } else if (config.algorithms[i] == Algorithm::kOful) {
      ridge_policy[i].emplace(RidgeEstimator(config.gaussian.d_x, config.lambda), ridge_params);
    } else {
      throw std::invalid_argument("bandit run: unsupported algorithm");
    }
  }

  RunOutput out;
  out.per_algorithm.resize(config.algorithms.size());
  for (auto& v : out.per_algorithm) v.reserve(config.horizon);

  for (long t = 1; t <= config.horizon; ++t) {
    // One context table per round, shared across policies for paired
    // comparisons; draws are policy-independent so the stream depends only on
    // (config, run).
    const RoundDraw draw = env.draw_round(rng);
    for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
      RoundRecord rec;
      rec.run_id = run_id;
      rec.t = t;
      rec.algorithm = config.algorithms[i];
      RoundRecordLite lite;
      const Eigen::VectorXd* beta_state = nullptr;
      if (iv_policy[i]) {
        const Eigen::VectorXd beta_prev = iv_policy[i]->beta();
        lite = bandit_round_on(draw, env, *iv_policy[i]);
        const Eigen::VectorXd x = draw.contexts.xs.row(lite.chosen_arm);
        rec.ident_inc = identification_increment(beta_prev, model.beta, x);
        rec.oracle_inc = oracle_increment(lite.reward, x, beta_prev, model.beta);
        beta_state = &iv_policy[i]->beta();
      } else {
        const Eigen::VectorXd beta_prev = ridge_policy[i]->beta();
        lite = bandit_round_on(draw, env, *ridge_policy[i]);
        const Eigen::VectorXd x = draw.contexts.xs.row(lite.chosen_arm);
        rec.ident_inc = identification_increment(beta_prev, model.beta, x);
        rec.oracle_inc = oracle_increment(lite.reward, x, beta_prev, model.beta);
        beta_state = &ridge_policy[i]->beta();
      }
      rec.prediction = lite.prediction;
      rec.chosen_arm = lite.chosen_arm;
      rec.pseudo_regret = lite.pseudo_regret;
      rec.mse = mse(*beta_state, model.beta);
      if (!out.per_algorithm[i].empty()) {
        rec.ident_cum = out.per_algorithm[i].back().ident_cum;
        rec.oracle_cum = out.per_algorithm[i].back().oracle_cum;
      }
      rec.ident_cum += rec.ident_inc;
      rec.oracle_cum += rec.oracle_inc;
      if (config.log_beta) rec.beta.assign(beta_state->data(), beta_state->data() + beta_state->size());
      out.per_algorithm[i].push_back(std::move(rec));
    }
  }
  return out;
}

inline RunOutput run_realdata_kind(const ExperimentConfig& config, int run_id) {
  const std::vector<Sample> stream = load_gasoline_csv(config.dataset_path);
  if (stream.empty()) throw std::invalid_argument("realdata: empty dataset");
  const Eigen::Index d_z = stream.front().z.size();
  const Eigen::Index d_x = stream.front().x.size();
  const long horizon = static_cast<long>(stream.size());

  RunOutput out;
  out.per_algorithm.resize(config.algorithms.size());
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    std::optional<O2slsEstimator> o2sls;
    std::optional<RidgeEstimator> ridge;
    if (config.algorithms[i] == Algorithm::kO2sls) {
      o2sls.emplace(d_z, d_x, config.lambda, config.mu);
    } else if (config.algorithms[i] == Algorithm::kRidge) {
      ridge.emplace(d_x, config.lambda);
    } else {
      throw std::invalid_argument("realdata run: unsupported algorithm");
    }
    std::vector<double> ys, fitted;
    for (long t = 1; t <= horizon; ++t) {
      const Sample& s = stream[static_cast<std::size_t>(t - 1)];
      RoundRecord rec;
      rec.run_id = run_id;
      rec.t = t;
      rec.algorithm = config.algorithms[i];
      const Eigen::VectorXd* beta_state = nullptr;
      if (o2sls) {
        rec.prediction = o2sls->predict(s.x);
        o2sls->ingest(s.z, s.x, s.y);
        beta_state = &o2sls->beta();
      } else {
        rec.prediction = ridge->predict(s.x);
        ridge->ingest(s.x, s.y);
        beta_state = &ridge->beta();
      }
      ys.push_back(s.y);
      fitted.clear();
      for (long u = 0; u < t; ++u) {
        fitted.push_back(beta_state->dot(stream[static_cast<std::size_t>(u)].x));
      }
      try {
        rec.r_squared = r_squared(ys, fitted);
      } catch (const std::invalid_argument&) {
        rec.r_squared = std::numeric_limits<double>::quiet_NaN();
      }
      rec.beta.assign(beta_state->data(), beta_state->data() + beta_state->size());
      if (!out.per_algorithm[i].empty()) {
        rec.ident_cum = out.per_algorithm[i].back().ident_cum;
        rec.oracle_cum = out.per_algorithm[i].back().oracle_cum;
      }
      out.per_algorithm[i].push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace detail

/// One replication, a pure function of (config, run_id): every run is
/// reconstructible from those two values alone.
inline detail::RunOutput run_single(const ExperimentConfig& config, int run_id) {
  Rng rng(substream_seed(config.master_seed, static_cast<std::uint64_t>(run_id)));
  switch (config.kind) {
    case ExperimentKind::kRegression:
    case ExperimentKind::kPriceSales:
      return detail::run_regression_kind(config, run_id, rng);
    case ExperimentKind::kBandit:
      return detail::run_bandit_kind(config, run_id, rng);
    case ExperimentKind::kRealData:
      return detail::run_realdata_kind(config, run_id);
  }
  throw std::invalid_argument("run_single: unknown kind");
}

/// Runs n_runs independent replications (worker threads share nothing but the
/// config) and aggregates per-step means and sample standard deviations over
/// the completed runs. Results are bit-identical for any worker count.
inline ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0) {
  config.validate_or_throw();
  const int n_runs = config.kind == ExperimentKind::kRealData ? 1 : config.n_runs;
  if (workers <= 0) workers = default_worker_count();
  workers = std::min(workers, n_runs);

  std::vector<std::optional<detail::RunOutput>> outputs(n_runs);
  std::vector<std::optional<std::string>> errors(n_runs);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int run = next.fetch_add(1);
      if (run >= n_runs) return;
      try {
        outputs[run] = run_single(config, run);
      } catch (const std::exception& e) {
        errors[run] = e.what();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  for (int run = 0; run < n_runs; ++run) {
    if (errors[run]) result.failures.push_back({run, *errors[run]});
  }
  result.completed_runs = n_runs - static_cast<int>(result.failures.size());

  // Records ordered by (algorithm, run, t).
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    for (int run = 0; run < n_runs; ++run) {
      if (!outputs[run]) continue;
      const auto& rows = outputs[run]->per_algorithm[i];
      result.records.insert(result.records.end(), rows.begin(), rows.end());
    }
  }

  auto mean_std = [](const std::vector<double>& v) {
    if (v.empty()) return std::pair<double, double>{0.0, 0.0};
    double mean = 0.0;
    for (double value : v) mean += value;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double value : v) var += (value - mean) * (value - mean);
    var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
    return std::pair<double, double>{mean, std::sqrt(var)};
  };

  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    long steps = 0;
    for (int run = 0; run < n_runs; ++run) {
      if (outputs[run]) {
        steps = static_cast<long>(outputs[run]->per_algorithm[i].size());
        break;
      }
    }
    AggregateCurve curve;
    curve.ident_mean.assign(steps, 0.0);
    curve.ident_std.assign(steps, 0.0);
    curve.oracle_mean.assign(steps, 0.0);
    curve.oracle_std.assign(steps, 0.0);
    curve.mse_mean.assign(steps, 0.0);
    curve.mse_std.assign(steps, 0.0);
    const bool bandit = config.kind == ExperimentKind::kBandit;
    if (bandit) {
      curve.regret_mean.assign(steps, 0.0);
      curve.regret_std.assign(steps, 0.0);
    }
    std::vector<double> regret_cum(static_cast<std::size_t>(n_runs), 0.0);
    for (long t = 0; t < steps; ++t) {
      std::vector<double> ident, oracle, msev, regret;
      for (int run = 0; run < n_runs; ++run) {
        if (!outputs[run]) continue;
        const auto& rec = outputs[run]->per_algorithm[i][static_cast<std::size_t>(t)];
        ident.push_back(rec.ident_cum);
        oracle.push_back(rec.oracle_cum);
        msev.push_back(rec.mse);
        if (bandit) {
          regret_cum[static_cast<std::size_t>(run)] += rec.pseudo_regret;
          regret.push_back(regret_cum[static_cast<std::size_t>(run)]);
        }
      }
      std::tie(curve.ident_mean[t], curve.ident_std[t]) = mean_std(ident);
      std::tie(curve.oracle_mean[t], curve.oracle_std[t]) = mean_std(oracle);
      std::tie(curve.mse_mean[t], curve.mse_std[t]) = mean_std(msev);
      if (bandit) std::tie(curve.regret_mean[t], curve.regret_std[t]) = mean_std(regret);
    }
    result.curves.emplace_back(config.algorithms[i], std::move(curve));
  }
  return result;
}

}  // namespace ivstream
