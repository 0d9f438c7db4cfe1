#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivstream/dgp.hpp"

namespace ivstream {

/// One year of the gasoline-consumption study. All series are logs of real
/// indices; GC is the outcome, PG the endogenous covariate, RI doubles as
/// exogenous covariate and instrument, RPN/RPT/RPU are instruments.
struct GasolineRow {
  int year = 0;
  double gc = 0.0;
  double pg = 0.0;
  double ri = 0.0;
  double rpn = 0.0;
  double rpt = 0.0;
  double rpu = 0.0;
};

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

inline std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  auto end = s.find_last_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace detail

/// Reads the seven-column gasoline CSV (header-keyed, case-insensitive,
/// '#' comment lines skipped), returning rows sorted by year.
inline std::vector<GasolineRow> load_gasoline_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_gasoline_csv: cannot open '" + path + "'");
  std::string line;
  std::vector<std::string> header;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    header = detail::split_csv_line(trimmed);
    break;
  }
  if (header.empty()) throw std::invalid_argument("load_gasoline_csv: missing header row");

  const std::vector<std::string> wanted = {"year", "gc", "pg", "ri", "rpn", "rpt", "rpu"};
  std::vector<int> column(wanted.size(), -1);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = detail::lower(header[c]);
    for (std::size_t w = 0; w < wanted.size(); ++w) {
      if (name == wanted[w]) column[w] = static_cast<int>(c);
    }
  }
  for (std::size_t w = 0; w < wanted.size(); ++w) {
    if (column[w] < 0) {
      throw std::invalid_argument("load_gasoline_csv: missing column '" + wanted[w] + "'");
    }
  }

  std::vector<GasolineRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto fields = detail::split_csv_line(trimmed);
    if (fields.size() < header.size()) {
      throw std::invalid_argument("load_gasoline_csv: row at line " + std::to_string(line_no) +
                                  " has " + std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
    }
    auto numeric = [&](std::size_t w) {
      const std::string& cell = fields[static_cast<std::size_t>(column[w])];
      try {
        std::size_t used = 0;
        const double value = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(value)) throw std::invalid_argument(cell);
        return value;
      } catch (const std::exception&) {
        throw std::invalid_argument("load_gasoline_csv: non-numeric cell '" + cell +
                                    "' in column '" + wanted[w] + "' at line " +
                                    std::to_string(line_no));
      }
    };
    GasolineRow row;
    row.year = static_cast<int>(numeric(0));
    row.gc = numeric(1);
    row.pg = numeric(2);
    row.ri = numeric(3);
    row.rpn = numeric(4);
    row.rpt = numeric(5);
    row.rpu = numeric(6);
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const GasolineRow& a, const GasolineRow& b) { return a.year < b.year; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].year == rows[i - 1].year) {
      throw std::invalid_argument("load_gasoline_csv: duplicate year " +
                                  std::to_string(rows[i].year));
    }
  }
  return rows;
}

/// Two-stage regression layout: y = GC, x = (1, PG, RI), z = (1, RI, RPT, RPN, RPU).
/// The leading constants carry the intercepts of both stages.
inline Sample gasoline_row_to_sample(const GasolineRow& row) {
  Sample s;
  s.x = Eigen::VectorXd(3);
  s.x << 1.0, row.pg, row.ri;
  s.z = Eigen::VectorXd(5);
  s.z << 1.0, row.ri, row.rpt, row.rpn, row.rpu;
  s.y = row.gc;
  s.latent_eps = Eigen::VectorXd::Constant(3, std::numeric_limits<double>::quiet_NaN());
  s.latent_eta = std::numeric_limits<double>::quiet_NaN();
  return s;
}

inline std::vector<Sample> load_gasoline_csv(const std::string& path) {
  const auto rows = load_gasoline_rows(path);
  std::vector<Sample> samples;
  samples.reserve(rows.size());
  for (const auto& row : rows) samples.push_back(gasoline_row_to_sample(row));
  return samples;
}

}  // namespace ivstream
