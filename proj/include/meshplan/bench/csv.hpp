// Copyright 2026 The meshplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Result CSV. Column order is fixed by kCsvColumns; solve_ms is appended only
// when timings are requested, since wall time would break byte-identical
// reruns.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshplan/bench/run.hpp"

namespace meshplan::bench {

inline constexpr std::array<const char*, 25> kCsvColumns = {
    "kind",           "rows",           "cols",           "sensing_radius",
    "boundary_weight", "num_static",    "num_mobile",     "max_steps",
    "travel_range_i", "travel_range_j", "static_overlap_limit", "mobile_overlap_limit",
    "coverage_ratio", "static_strategy", "mobile_strategy", "seed",
    "status",         "coverage_percent", "covered_cells", "total_movements",
    "visited_cells",  "target_cells",   "static_objective", "mobile_objective",
    "nodes"};

struct CsvOptions {
  bool timings = false;
};

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0" || s.rfind("-0.", 0) == 0) {  // no negative zero in output
    bool zero = true;
    for (char c : s) zero = zero && (c == '-' || c == '0' || c == '.');
    if (zero) s.erase(0, 1);
  }
  return s;
}

inline std::string metric(const ResultRow& r, double v) {
  return r.kind == RowKind::kRun ? fixed(v, 0) : fixed(v, 4);
}

inline std::string objective_text(const std::optional<double>& v) {
  if (!v) return "";
  return std::abs(*v - std::round(*v)) < 1e-6 ? fixed(std::round(*v), 0) : fixed(*v, 4);
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out, const CsvOptions& options = {}) {
  if (rows.empty()) throw std::invalid_argument("write_csv: no rows to write");
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
  if (options.timings) out << ",solve_ms";
  out << '\n';
  for (const auto& r : rows) {
    const auto& p = r.point;
    const std::string fields[] = {
        to_string(r.kind),
        std::to_string(p.rows),
        std::to_string(p.cols),
        std::to_string(p.sensing_radius),
        detail::rational_text(p.boundary_weight),
        std::to_string(p.num_static),
        std::to_string(p.num_mobile),
        std::to_string(p.max_steps),
        std::to_string(p.travel_range_i),
        std::to_string(p.travel_range_j),
        std::to_string(p.static_overlap_limit),
        std::to_string(p.mobile_overlap_limit),
        p.coverage_ratio ? detail::fixed(*p.coverage_ratio, 4) : "cov",
        to_string(r.strategy.static_strategy),
        to_string(r.strategy.mobile_strategy),
        r.seed ? std::to_string(*r.seed) : "",
        r.status,
        detail::fixed(r.coverage_percent(), 2),
        detail::metric(r, r.covered_cells),
        detail::metric(r, r.total_movements),
        detail::metric(r, r.visited_cells),
        std::to_string(r.target_cells),
        detail::objective_text(r.static_objective),
        detail::objective_text(r.mobile_objective),
        std::to_string(r.nodes),
    };
    bool first = true;
    for (const auto& f : fields) {
      out << (first ? "" : ",") << f;
      first = false;
    }
    if (options.timings) out << ',' << detail::fixed(r.solve_ms, 1);
    out << '\n';
  }
}

inline void emit_csv(const std::vector<ResultRow>& rows, const std::string& path, const CsvOptions& options = {}) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(rows, out, options);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

/// Parses CSV written by write_csv (with or without timings).
inline std::vector<ResultRow> read_csv(std::istream& in, const std::string& source = "csv") {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(source + ": empty file");
  const auto header = detail::split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) col[header[k]] = k;
  for (const char* name : kCsvColumns)
    if (!col.count(name)) throw std::runtime_error(source + ": missing column '" + name + "'");

  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = detail::split(line);
    if (f.size() != header.size())
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " fields, found " + std::to_string(f.size()));
    auto at = [&](const char* name) -> const std::string& { return f[col.at(name)]; };
    try {
      ResultRow r;
      const auto& kind = at("kind");
      if (kind == "run") r.kind = RowKind::kRun;
      else if (kind == "mean") r.kind = RowKind::kMean;
      else if (kind == "std") r.kind = RowKind::kStd;
      else throw std::invalid_argument("unknown row kind '" + kind + "'");
      auto& p = r.point;
      p.rows = std::stoi(at("rows"));
      p.cols = std::stoi(at("cols"));
      p.sensing_radius = std::stoi(at("sensing_radius"));
      p.boundary_weight = parse_rational(at("boundary_weight"));
      p.num_static = std::stoi(at("num_static"));
      p.num_mobile = std::stoi(at("num_mobile"));
      p.max_steps = std::stoi(at("max_steps"));
      p.travel_range_i = std::stoi(at("travel_range_i"));
      p.travel_range_j = std::stoi(at("travel_range_j"));
      p.static_overlap_limit = std::stoi(at("static_overlap_limit"));
      p.mobile_overlap_limit = std::stoi(at("mobile_overlap_limit"));
      if (at("coverage_ratio") == "cov") p.coverage_ratio.reset();
      else p.coverage_ratio = std::stod(at("coverage_ratio"));
      const auto s = parse_static_strategy(at("static_strategy"));
      const auto m = parse_mobile_strategy(at("mobile_strategy"));
      if (!s || !m) throw std::invalid_argument("unknown strategy");
      r.strategy = {*s, *m};
      if (!at("seed").empty()) r.seed = std::stoull(at("seed"));
      r.status = at("status");
      r.covered_cells = std::stod(at("covered_cells"));
      r.total_movements = std::stod(at("total_movements"));
      r.visited_cells = std::stod(at("visited_cells"));
      r.target_cells = std::stoi(at("target_cells"));
      if (!at("static_objective").empty()) r.static_objective = std::stod(at("static_objective"));
      if (!at("mobile_objective").empty()) r.mobile_objective = std::stod(at("mobile_objective"));
      r.nodes = std::stoll(at("nodes"));
      if (col.count("solve_ms")) r.solve_ms = std::stod(f[col.at("solve_ms")]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

inline std::vector<ResultRow> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(in, path);
}

}  // namespace meshplan::bench
