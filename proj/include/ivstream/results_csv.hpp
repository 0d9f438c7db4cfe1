#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivstream/config.hpp"
#include "ivstream/harness.hpp"

namespace ivstream {

namespace detail {

/// 17 significant digits: enough for a lossless double round trip.
inline std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace detail

struct ResultCsvLayout {
  bool bandit_columns = false;   // chosen_arm, pseudo_regret
  bool realdata_columns = false; // r_squared
  int beta_components = 0;       // beta_0..beta_{k-1} when positive
};

inline ResultCsvLayout layout_for(const ExperimentConfig& config,
                                  const std::vector<RoundRecord>& rows) {
  ResultCsvLayout layout;
  layout.bandit_columns = config.kind == ExperimentKind::kBandit;
  layout.realdata_columns = config.kind == ExperimentKind::kRealData;
  for (const auto& row : rows) {
    layout.beta_components = std::max(layout.beta_components, static_cast<int>(row.beta.size()));
  }
  return layout;
}

inline std::string result_csv_header(const ResultCsvLayout& layout) {
  std::string header = "run_id,t,algorithm,prediction,ident_inc,ident_cum,oracle_inc,oracle_cum,mse";
  if (layout.bandit_columns) header += ",chosen_arm,pseudo_regret";
  if (layout.realdata_columns) header += ",r_squared";
  for (int i = 0; i < layout.beta_components; ++i) header += ",beta_" + std::to_string(i);
  return header;
}

/// UTF-8 CSV ordered by (algorithm, run_id, t); the leading comment line
/// records the config hash and the failed-run count.
inline void write_results(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<RoundRecord>& rows, std::size_t failure_count) {
  const ResultCsvLayout layout = layout_for(config, rows);
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016" PRIx64, config_hash(config));
  out << "# config_hash=" << hash_buf << " failures=" << failure_count << "\n";
  out << result_csv_header(layout) << "\n";
  for (const auto& row : rows) {
    out << row.run_id << ',' << row.t << ',' << to_string(row.algorithm) << ','
        << detail::format_double(row.prediction) << ',' << detail::format_double(row.ident_inc)
        << ',' << detail::format_double(row.ident_cum) << ','
        << detail::format_double(row.oracle_inc) << ',' << detail::format_double(row.oracle_cum)
        << ',' << detail::format_double(row.mse);
    if (layout.bandit_columns) {
      out << ',' << row.chosen_arm << ',' << detail::format_double(row.pseudo_regret);
    }
    if (layout.realdata_columns) out << ',' << detail::format_double(row.r_squared);
    for (int i = 0; i < layout.beta_components; ++i) {
      out << ',';
      if (i < static_cast<int>(row.beta.size())) out << detail::format_double(row.beta[i]);
    }
    out << '\n';
  }
}

inline void write_results(const std::string& path, const ExperimentConfig& config,
                          const std::vector<RoundRecord>& rows, std::size_t failure_count) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_results: cannot open '" + path + "'");
  write_results(out, config, rows, failure_count);
}

/// Re-reads a results CSV produced by write_results.
inline std::vector<RoundRecord> read_results(std::istream& in) {
  std::vector<RoundRecord> rows;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    header = detail::split_csv_line(trimmed);
    break;
  }
  if (header.empty()) throw std::invalid_argument("read_results: missing header");
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int c_run = col("run_id"), c_t = col("t"), c_alg = col("algorithm");
  const int c_pred = col("prediction"), c_ii = col("ident_inc"), c_ic = col("ident_cum");
  const int c_oi = col("oracle_inc"), c_oc = col("oracle_cum"), c_mse = col("mse");
  const int c_arm = col("chosen_arm"), c_pr = col("pseudo_regret"), c_r2 = col("r_squared");
  int beta_components = 0;
  while (col("beta_" + std::to_string(beta_components)) >= 0) ++beta_components;
  if (c_run < 0 || c_t < 0 || c_alg < 0) throw std::invalid_argument("read_results: bad header");

  while (std::getline(in, line)) {
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto fields = detail::split_csv_line(trimmed);
    RoundRecord row;
    row.run_id = std::stoi(fields[c_run]);
    row.t = std::stol(fields[c_t]);
    Algorithm algorithm;
    if (!algorithm_from_string(fields[c_alg], algorithm)) {
      throw std::invalid_argument("read_results: unknown algorithm " + fields[c_alg]);
    }
    row.algorithm = algorithm;
    row.prediction = std::stod(fields[c_pred]);
    row.ident_inc = std::stod(fields[c_ii]);
    row.ident_cum = std::stod(fields[c_ic]);
    row.oracle_inc = std::stod(fields[c_oi]);
    row.oracle_cum = std::stod(fields[c_oc]);
    row.mse = std::stod(fields[c_mse]);
    if (c_arm >= 0) row.chosen_arm = std::stoi(fields[c_arm]);
    if (c_pr >= 0) row.pseudo_regret = std::stod(fields[c_pr]);
    if (c_r2 >= 0) row.r_squared = std::stod(fields[c_r2]);
    for (int i = 0; i < beta_components; ++i) {
      const std::string& cell = fields[static_cast<std::size_t>(col("beta_" + std::to_string(i)))];
      if (!cell.empty()) row.beta.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<RoundRecord> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_results: cannot open '" + path + "'");
  return read_results(in);
}

}  // namespace ivstream
