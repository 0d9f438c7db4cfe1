#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivstream/harness.hpp"

namespace ivstream {

/// Carries every validation problem found in a config file, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out = "config errors:";
    for (const auto& e : errors) out += "\n  - " + e;
    return out;
  }
  std::vector<std::string> errors_;
};

namespace detail {

inline bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline bool parse_long(const std::string& s, long long& out) {
  try {
    std::size_t used = 0;
    out = std::stoll(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace detail

inline bool algorithm_from_string(const std::string& name, Algorithm& out) {
  if (name == "o2sls") out = Algorithm::kO2sls;
  else if (name == "ridge") out = Algorithm::kRidge;
  else if (name == "vawr") out = Algorithm::kVawr;
  else if (name == "oful_iv") out = Algorithm::kOfulIv;
  else if (name == "oful") out = Algorithm::kOful;
  else return false;
  return true;
}

/// Flat key=value config format; '#' starts a comment, unknown keys are
/// rejected. Keys are documented in the README.
inline ExperimentConfig parse_config_text(const std::string& text) {
  std::vector<std::string> errors;
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = detail::trim(trimmed.substr(0, eq));
    const std::string value = detail::trim(trimmed.substr(eq + 1));
    if (kv.count(key)) errors.push_back("duplicate key '" + key + "'");
    kv[key] = value;
  }

  ExperimentConfig config;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    return &it->second;
  };
  auto take_double = [&](const std::string& key, double& out) {
    if (const std::string* v = take(key)) {
      if (!detail::parse_double(*v, out)) errors.push_back("key '" + key + "': not a number: " + *v);
      kv.erase(key);
      return true;
    }
    return false;
  };
  auto take_long = [&](const std::string& key, long long& out) {
    if (const std::string* v = take(key)) {
      if (!detail::parse_long(*v, out)) errors.push_back("key '" + key + "': not an integer: " + *v);
      kv.erase(key);
      return true;
    }
    return false;
  };

  bool have_kind = false;
  if (const std::string* v = take("kind")) {
    if (*v == "regression") config.kind = ExperimentKind::kRegression;
    else if (*v == "price_sales") config.kind = ExperimentKind::kPriceSales;
    else if (*v == "bandit") config.kind = ExperimentKind::kBandit;
    else if (*v == "realdata") config.kind = ExperimentKind::kRealData;
    else errors.push_back("key 'kind': unknown value '" + *v + "'");
    have_kind = true;
    kv.erase("kind");
  } else {
    errors.push_back("missing required key 'kind'");
  }

  // Defaults depending on kind; explicit keys below override.
  if (have_kind) {
    if (config.kind == ExperimentKind::kBandit) {
      config.lambda = 1e-1;
      config.n_runs = 100;
      config.gaussian = GaussianIvConfig::bandit_defaults();
      config.algorithms = {Algorithm::kOfulIv, Algorithm::kOful};
    } else if (config.kind == ExperimentKind::kRealData) {
      config.n_runs = 1;
      config.log_beta = true;
      config.algorithms = {Algorithm::kO2sls, Algorithm::kRidge};
    } else if (config.kind == ExperimentKind::kPriceSales) {
      config.mu = 1.0;
      config.algorithms = {Algorithm::kO2sls, Algorithm::kRidge};
    } else {
      config.algorithms = {Algorithm::kO2sls, Algorithm::kRidge, Algorithm::kVawr};
    }
  }

  long long integer = 0;
  if (take_long("T", integer)) config.horizon = static_cast<long>(integer);
  if (take_long("n_runs", integer)) config.n_runs = static_cast<int>(integer);
  if (take_long("seed", integer)) config.master_seed = static_cast<std::uint64_t>(integer);
  take_double("lambda", config.lambda);
  take_double("mu", config.mu);
  take_double("delta", config.delta);
  if (const std::string* v = take("output")) {
    config.output_path = *v;
    kv.erase("output");
  }
  if (const std::string* v = take("log_beta")) {
    if (*v == "true" || *v == "1") config.log_beta = true;
    else if (*v == "false" || *v == "0") config.log_beta = false;
    else errors.push_back("key 'log_beta': expected true/false");
    kv.erase("log_beta");
  }
  if (const std::string* v = take("algorithms")) {
    config.algorithms.clear();
    std::stringstream ss(*v);
    std::string name;
    while (std::getline(ss, name, ',')) {
      name = detail::trim(name);
      if (name.empty()) continue;
      Algorithm algorithm;
      if (!algorithm_from_string(name, algorithm)) {
        errors.push_back("key 'algorithms': unknown algorithm '" + name + "'");
      } else {
        config.algorithms.push_back(algorithm);
      }
    }
    kv.erase("algorithms");
  }

  if (take_long("dgp.d_z", integer)) config.gaussian.d_z = static_cast<int>(integer);
  if (take_long("dgp.d_x", integer)) config.gaussian.d_x = static_cast<int>(integer);
  take_double("dgp.beta_mean", config.gaussian.beta_mean);
  if (take_long("dgp.corr_count", integer)) config.gaussian.corr_count = static_cast<int>(integer);
  take_double("dgp.noise_scale", config.gaussian.noise_scale);
  if (const std::string* v = take("dgp.variant")) {
    if (*v == "regression") config.gaussian.variant = GaussianIvVariant::kRegression;
    else if (*v == "bandit") config.gaussian.variant = GaussianIvVariant::kBandit;
    else errors.push_back("key 'dgp.variant': unknown value '" + *v + "'");
    kv.erase("dgp.variant");
  }
  if (take_long("dgp.arms", integer)) config.num_arms = static_cast<int>(integer);
  take_double("dgp.theta", config.price_sales.theta);
  take_double("dgp.beta", config.price_sales.beta);
  take_double("dgp.rho_f", config.price_sales.rho_f);
  take_double("dgp.rho_s", config.price_sales.rho_s);
  take_double("dgp.event_prob", config.price_sales.event_prob);
  take_double("dgp.eps_f_mean", config.price_sales.eps_f_mean);
  take_double("dgp.eps_f_sd", config.price_sales.eps_f_sd);
  take_double("dgp.eta_s_mean", config.price_sales.eta_s_mean);
  take_double("dgp.eta_s_sd", config.price_sales.eta_s_sd);
  if (const std::string* v = take("dgp.dataset")) {
    config.dataset_path = *v;
    kv.erase("dgp.dataset");
  }

  for (const auto& [key, value] : kv) {
    errors.push_back("unknown key '" + key + "'");
  }
  for (const auto& e : config.validation_errors()) errors.push_back(e);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

inline ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

/// Canonical serialization of the effective config; hashed into the CSV
/// header so outputs are traceable to their exact parameters.
inline std::string canonical_config_string(const ExperimentConfig& config) {
  std::ostringstream out;
  out.precision(17);
  out << "kind=" << to_string(config.kind) << '\n';
  out << "T=" << config.horizon << '\n';
  out << "n_runs=" << config.n_runs << '\n';
  out << "seed=" << config.master_seed << '\n';
  out << "lambda=" << config.lambda << '\n';
  out << "mu=" << config.mu << '\n';
  out << "delta=" << config.delta << '\n';
  out << "algorithms=";
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    out << (i ? "," : "") << to_string(config.algorithms[i]);
  }
  out << '\n';
  out << "log_beta=" << (config.log_beta ? "true" : "false") << '\n';
  switch (config.kind) {
    case ExperimentKind::kRegression:
    case ExperimentKind::kBandit:
      out << "dgp.d_z=" << config.gaussian.d_z << '\n';
      out << "dgp.d_x=" << config.gaussian.d_x << '\n';
      out << "dgp.beta_mean=" << config.gaussian.beta_mean << '\n';
      out << "dgp.corr_count=" << config.gaussian.corr_count << '\n';
      out << "dgp.noise_scale=" << config.gaussian.noise_scale << '\n';
      if (config.kind == ExperimentKind::kBandit) out << "dgp.arms=" << config.num_arms << '\n';
      break;
    case ExperimentKind::kPriceSales:
      out << "dgp.theta=" << config.price_sales.theta << '\n';
      out << "dgp.beta=" << config.price_sales.beta << '\n';
      out << "dgp.rho_f=" << config.price_sales.rho_f << '\n';
      out << "dgp.rho_s=" << config.price_sales.rho_s << '\n';
      out << "dgp.event_prob=" << config.price_sales.event_prob << '\n';
      out << "dgp.eps_f_mean=" << config.price_sales.eps_f_mean << '\n';
      out << "dgp.eps_f_sd=" << config.price_sales.eps_f_sd << '\n';
      out << "dgp.eta_s_mean=" << config.price_sales.eta_s_mean << '\n';
      out << "dgp.eta_s_sd=" << config.price_sales.eta_s_sd << '\n';
      break;
    case ExperimentKind::kRealData:
      out << "dgp.dataset=" << config.dataset_path << '\n';
      break;
  }
  return out.str();
}

inline std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string canonical = canonical_config_string(config);
  std::uint64_t hash = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

}  // namespace ivstream
