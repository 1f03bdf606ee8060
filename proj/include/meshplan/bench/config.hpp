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

// Scenario configuration (JSON, schema_version 1) and sweep expansion.
// The schema is documented in docs/config-schema.md.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "meshplan/bip/model.hpp"
#include "meshplan/grid.hpp"
#include "meshplan/planners.hpp"

namespace meshplan::bench {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class StaticStrategy { kRandom, kMilp };
enum class MobileStrategy { kRandom, kGreedy, kMilpCov, kMilpMov };

inline const char* to_string(StaticStrategy s) { return s == StaticStrategy::kRandom ? "random" : "milp"; }

inline const char* to_string(MobileStrategy m) {
  switch (m) {
    case MobileStrategy::kRandom: return "random";
    case MobileStrategy::kGreedy: return "greedy";
    case MobileStrategy::kMilpCov: return "milp-cov";
    case MobileStrategy::kMilpMov: return "milp-mov";
  }
  return "?";
}

inline std::optional<StaticStrategy> parse_static_strategy(const std::string& s) {
  if (s == "random") return StaticStrategy::kRandom;
  if (s == "milp") return StaticStrategy::kMilp;
  return std::nullopt;
}

inline std::optional<MobileStrategy> parse_mobile_strategy(const std::string& s) {
  for (auto m : {MobileStrategy::kRandom, MobileStrategy::kGreedy, MobileStrategy::kMilpCov,
                 MobileStrategy::kMilpMov})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

struct StrategyPair {
  StaticStrategy static_strategy = StaticStrategy::kMilp;
  MobileStrategy mobile_strategy = MobileStrategy::kMilpCov;

  bool stochastic() const {
    return static_strategy == StaticStrategy::kRandom || mobile_strategy == MobileStrategy::kRandom;
  }
  std::string label() const { return std::string(to_string(static_strategy)) + "+" + to_string(mobile_strategy); }
  friend auto operator<=>(const StrategyPair&, const StrategyPair&) = default;
};

/// One point of the sweep. `coverage_ratio` empty means "whatever MILP-Cov
/// reaches on the same static placement" (only meaningful for milp-mov).
struct AxisPoint {
  int rows = 7;
  int cols = 7;
  int sensing_radius = 1;
  Rational boundary_weight{1, 2};
  int num_static = 1;
  int num_mobile = 1;
  int max_steps = 2;
  int travel_range_i = 2;
  int travel_range_j = 2;
  int static_overlap_limit = 2;
  int mobile_overlap_limit = 2;
  std::optional<double> coverage_ratio = 1.0;

  ScenarioParams params() const {
    ScenarioParams p;
    p.grid.rows = rows;
    p.grid.cols = cols;
    p.grid.sensing_radius = sensing_radius;
    p.grid.boundary_weight = boundary_weight;
    p.num_static = num_static;
    p.num_mobile = num_mobile;
    p.max_steps = max_steps;
    p.travel_range_i = travel_range_i;
    p.travel_range_j = travel_range_j;
    p.static_overlap_limit = static_overlap_limit;
    p.mobile_overlap_limit = mobile_overlap_limit;
    p.coverage_ratio_target = coverage_ratio.value_or(1.0);
    return p;
  }

  // Emission order: grid, then N_m before N_s (the tables list mobile counts
  // as the outer index), then horizon and ranges.
  auto key() const {
    const double alpha = boundary_weight.value();
    const double cr = coverage_ratio.value_or(-1.0);
    return std::tuple(rows, cols, sensing_radius, alpha, num_mobile, num_static, max_steps,
                      travel_range_i, travel_range_j, static_overlap_limit, mobile_overlap_limit, cr);
  }
  friend bool operator<(const AxisPoint& a, const AxisPoint& b) { return a.key() < b.key(); }
  friend bool operator==(const AxisPoint& a, const AxisPoint& b) { return a.key() == b.key(); }
};

/// Lists of values; an empty list leaves the base value in place. The block
/// expands to the Cartesian product of its non-empty axes.
struct SweepBlock {
  std::vector<int> num_static = {};
  std::vector<int> num_mobile = {};
  std::vector<int> max_steps = {};
  std::vector<int> travel_range = {};
  std::vector<int> sensing_radius = {};
  std::vector<std::optional<double>> coverage_ratio = {};
};

struct ScenarioConfig {
  std::string name = "scenario";
  AxisPoint base;
  std::vector<SweepBlock> sweeps;
  std::vector<StrategyPair> strategies{{StaticStrategy::kMilp, MobileStrategy::kMilpCov}};
  std::vector<std::uint64_t> seeds;
  bip::SolverConfig solver;
  // per-pair replacement for solver.max_nodes
  std::map<StrategyPair, std::int64_t> node_limits;
  std::string output;
  int workers = 0;  // 0: take the environment or the hardware default

  bip::SolverConfig solver_for(const StrategyPair& pair) const {
    bip::SolverConfig s = solver;
    if (auto it = node_limits.find(pair); it != node_limits.end()) s.max_nodes = it->second;
    return s;
  }
};

inline std::vector<std::uint64_t> seed_range(int count) {
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= count; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  return seeds;
}

inline void validate(const ScenarioConfig& c) {
  if (c.strategies.empty()) throw ConfigError("$.strategies", "at least one strategy pair is required");
  bool stochastic = false;
  for (const auto& s : c.strategies) stochastic = stochastic || s.stochastic();
  if (stochastic && c.seeds.empty())
    throw ConfigError("$.seeds", "random strategies need a non-empty seed list or seed_count");
  for (std::size_t b = 0; b < c.sweeps.size(); ++b) {
    const auto& s = c.sweeps[b];
    if (s.num_static.empty() && s.num_mobile.empty() && s.max_steps.empty() && s.travel_range.empty() &&
        s.sensing_radius.empty() && s.coverage_ratio.empty())
      throw ConfigError("$.sweeps[" + std::to_string(b) + "]", "sweep block has no axes");
  }
  try {
    validate(c.solver);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("$.solver", e.what());
  }
  if (c.workers < 0) throw ConfigError("$.workers", "must be >= 0");
}

/// Every axis point, sorted and de-duplicated.
inline std::vector<AxisPoint> expand_points(const ScenarioConfig& c) {
  std::vector<SweepBlock> blocks = c.sweeps;
  if (blocks.empty()) blocks.push_back({});
  std::set<AxisPoint> points;
  for (const auto& b : blocks) {
    std::vector<AxisPoint> acc{c.base};
    auto expand = [&acc](const auto& values, auto apply) {
      if (values.empty()) return;
      std::vector<AxisPoint> next;
      for (const auto& p : acc)
        for (const auto& v : values) {
          AxisPoint q = p;
          apply(q, v);
          next.push_back(q);
        }
      acc = std::move(next);
    };
    expand(b.num_static, [](AxisPoint& p, int v) { p.num_static = v; });
    expand(b.num_mobile, [](AxisPoint& p, int v) { p.num_mobile = v; });
    expand(b.max_steps, [](AxisPoint& p, int v) { p.max_steps = v; });
    expand(b.travel_range, [](AxisPoint& p, int v) { p.travel_range_i = p.travel_range_j = v; });
    expand(b.sensing_radius, [](AxisPoint& p, int v) { p.sensing_radius = v; });
    expand(b.coverage_ratio, [](AxisPoint& p, std::optional<double> v) { p.coverage_ratio = v; });
    points.insert(acc.begin(), acc.end());
  }
  return {points.begin(), points.end()};
}

// ---- JSON ----------------------------------------------------------------

namespace detail {

using nlohmann::json;

inline void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw ConfigError(path + "." + it.key(), "unknown field");
  }
}

inline int get_int(const json& j, const std::string& path, int min_value) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < min_value || v > 1'000'000) throw ConfigError(path, "must lie in [" + std::to_string(min_value) + ", 1000000]");
  return static_cast<int>(v);
}

inline double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

inline std::optional<double> get_ratio(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "cov") return std::nullopt;
  const double v = j.is_number() ? j.get<double>() : -1.0;
  if (!j.is_number() || !(v > 0.0 && v <= 1.0))
    throw ConfigError(path, "expected a ratio in (0, 1] or \"cov\"");
  return v;
}

inline Rational get_rational(const json& j, const std::string& path) {
  try {
    Rational r;
    if (j.is_string()) {
      r = parse_rational(j.get<std::string>());
    } else if (j.is_number_integer()) {
      r = {j.get<std::int64_t>(), 1};
    } else if (j.is_number()) {
      std::ostringstream text;
      text << j.get<double>();
      r = parse_rational(text.str());
    } else {
      throw ConfigError(path, "expected a rational such as \"1/2\"");
    }
    if (r.num < 0) throw ConfigError(path, "must be non-negative");
    return r;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(path, e.what());
  }
}

template <typename T, typename Read>
std::vector<T> get_list(const json& j, const std::string& path, Read read) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty list");
  std::vector<T> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(read(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::string rational_text(Rational r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace detail

inline ScenarioConfig parse_config(const nlohmann::json& doc) {
  using detail::get_int;
  using nlohmann::json;
  detail::require_object(doc, "$", {"schema_version", "name", "grid", "scenario", "sweeps", "strategies",
                                    "seeds", "seed_count", "solver", "output", "workers"});
  if (!doc.contains("schema_version")) throw ConfigError("$.schema_version", "missing");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError("$.schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");

  ScenarioConfig c;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ConfigError("$.name", "expected a string");
    c.name = doc["name"].get<std::string>();
  }
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    detail::require_object(g, "$.grid", {"rows", "cols", "sensing_radius", "boundary_weight"});
    if (g.contains("rows")) c.base.rows = get_int(g["rows"], "$.grid.rows", 1);
    if (g.contains("cols")) c.base.cols = get_int(g["cols"], "$.grid.cols", 1);
    if (g.contains("sensing_radius")) c.base.sensing_radius = get_int(g["sensing_radius"], "$.grid.sensing_radius", 0);
    if (g.contains("boundary_weight"))
      c.base.boundary_weight = detail::get_rational(g["boundary_weight"], "$.grid.boundary_weight");
  }
  if (doc.contains("scenario")) {
    const auto& s = doc["scenario"];
    const std::string p = "$.scenario";
    detail::require_object(s, p, {"num_static", "num_mobile", "max_steps", "travel_range", "travel_range_i",
                                  "travel_range_j", "static_overlap_limit", "mobile_overlap_limit",
                                  "coverage_ratio"});
    if (s.contains("num_static")) c.base.num_static = get_int(s["num_static"], p + ".num_static", 0);
    if (s.contains("num_mobile")) c.base.num_mobile = get_int(s["num_mobile"], p + ".num_mobile", 0);
    if (s.contains("max_steps")) c.base.max_steps = get_int(s["max_steps"], p + ".max_steps", 0);
    if (s.contains("travel_range"))
      c.base.travel_range_i = c.base.travel_range_j = get_int(s["travel_range"], p + ".travel_range", 0);
    if (s.contains("travel_range_i")) c.base.travel_range_i = get_int(s["travel_range_i"], p + ".travel_range_i", 0);
    if (s.contains("travel_range_j")) c.base.travel_range_j = get_int(s["travel_range_j"], p + ".travel_range_j", 0);
    if (s.contains("static_overlap_limit"))
      c.base.static_overlap_limit = get_int(s["static_overlap_limit"], p + ".static_overlap_limit", 0);
    if (s.contains("mobile_overlap_limit"))
      c.base.mobile_overlap_limit = get_int(s["mobile_overlap_limit"], p + ".mobile_overlap_limit", 0);
    if (s.contains("coverage_ratio")) c.base.coverage_ratio = detail::get_ratio(s["coverage_ratio"], p + ".coverage_ratio");
  }
  if (doc.contains("sweeps")) {
    const auto& sw = doc["sweeps"];
    if (!sw.is_array()) throw ConfigError("$.sweeps", "expected a list of sweep blocks");
    for (std::size_t b = 0; b < sw.size(); ++b) {
      const std::string p = "$.sweeps[" + std::to_string(b) + "]";
      const auto& j = sw[b];
      detail::require_object(j, p, {"num_static", "num_mobile", "max_steps", "travel_range", "sensing_radius",
                                    "coverage_ratio"});
      SweepBlock block;
      auto ints = [&](const char* key, std::vector<int>& out, int min_value) {
        if (j.contains(key))
          out = detail::get_list<int>(j[key], p + "." + key,
                                      [min_value](const json& v, const std::string& q) { return get_int(v, q, min_value); });
      };
      ints("num_static", block.num_static, 0);
      ints("num_mobile", block.num_mobile, 0);
      ints("max_steps", block.max_steps, 0);
      ints("travel_range", block.travel_range, 0);
      ints("sensing_radius", block.sensing_radius, 0);
      if (j.contains("coverage_ratio"))
        block.coverage_ratio =
            detail::get_list<std::optional<double>>(j["coverage_ratio"], p + ".coverage_ratio", detail::get_ratio);
      c.sweeps.push_back(std::move(block));
    }
  }
  if (doc.contains("strategies")) {
    const auto& st = doc["strategies"];
    if (!st.is_array() || st.empty()) throw ConfigError("$.strategies", "expected a non-empty list");
    c.strategies.clear();
    for (std::size_t k = 0; k < st.size(); ++k) {
      const std::string p = "$.strategies[" + std::to_string(k) + "]";
      detail::require_object(st[k], p, {"static", "mobile", "max_nodes"});
      StrategyPair pair;
      if (!st[k].contains("static") || !st[k]["static"].is_string())
        throw ConfigError(p + ".static", "expected \"random\" or \"milp\"");
      if (!st[k].contains("mobile") || !st[k]["mobile"].is_string())
        throw ConfigError(p + ".mobile", "expected \"random\", \"greedy\", \"milp-cov\" or \"milp-mov\"");
      const auto s = parse_static_strategy(st[k]["static"].get<std::string>());
      const auto m = parse_mobile_strategy(st[k]["mobile"].get<std::string>());
      if (!s) throw ConfigError(p + ".static", "expected \"random\" or \"milp\"");
      if (!m) throw ConfigError(p + ".mobile", "expected \"random\", \"greedy\", \"milp-cov\" or \"milp-mov\"");
      pair.static_strategy = *s;
      pair.mobile_strategy = *m;
      if (st[k].contains("max_nodes")) {
        const auto& mn = st[k]["max_nodes"];
        if (!mn.is_number_integer() || mn.get<std::int64_t>() <= 0)
          throw ConfigError(p + ".max_nodes", "expected a positive integer");
        c.node_limits[pair] = mn.get<std::int64_t>();
      }
      c.strategies.push_back(pair);
    }
  }
  if (doc.contains("seeds") && doc.contains("seed_count"))
    throw ConfigError("$.seeds", "give either seeds or seed_count, not both");
  if (doc.contains("seeds")) {
    const auto& s = doc["seeds"];
    if (!s.is_array()) throw ConfigError("$.seeds", "expected a list of non-negative integers");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!s[k].is_number_unsigned())
        throw ConfigError("$.seeds[" + std::to_string(k) + "]", "expected a non-negative integer");
      c.seeds.push_back(s[k].get<std::uint64_t>());
    }
  }
  if (doc.contains("seed_count")) c.seeds = seed_range(get_int(doc["seed_count"], "$.seed_count", 0));
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    detail::require_object(s, "$.solver", {"max_seconds", "max_nodes", "branching", "integrality_tolerance"});
    if (s.contains("max_seconds")) {
      c.solver.max_seconds = detail::get_number(s["max_seconds"], "$.solver.max_seconds");
      if (!(c.solver.max_seconds > 0)) throw ConfigError("$.solver.max_seconds", "must be positive");
    }
    if (s.contains("max_nodes")) {
      if (!s["max_nodes"].is_number_integer() || s["max_nodes"].get<std::int64_t>() < 1)
        throw ConfigError("$.solver.max_nodes", "expected a positive integer");
      c.solver.max_nodes = s["max_nodes"].get<std::int64_t>();
    }
    if (s.contains("branching")) {
      const auto b = s["branching"].is_string() ? s["branching"].get<std::string>() : "";
      if (b == "most-fractional") c.solver.branching_rule = bip::BranchingRule::kMostFractional;
      else if (b == "first-fractional") c.solver.branching_rule = bip::BranchingRule::kFirstFractional;
      else throw ConfigError("$.solver.branching", "expected \"most-fractional\" or \"first-fractional\"");
    }
    if (s.contains("integrality_tolerance"))
      c.solver.integrality_tolerance = detail::get_number(s["integrality_tolerance"], "$.solver.integrality_tolerance");
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("$.output", "expected a path string");
    c.output = doc["output"].get<std::string>();
  }
  if (doc.contains("workers")) c.workers = get_int(doc["workers"], "$.workers", 0);
  validate(c);
  return c;
}

inline ScenarioConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

/// Serializes a config back to schema_version 1 JSON.
inline nlohmann::json config_to_json(const ScenarioConfig& c) {
  using nlohmann::json;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = c.name;
  doc["grid"] = {{"rows", c.base.rows},
                 {"cols", c.base.cols},
                 {"sensing_radius", c.base.sensing_radius},
                 {"boundary_weight", detail::rational_text(c.base.boundary_weight)}};
  auto ratio = [](std::optional<double> r) { return r ? json(*r) : json("cov"); };
  doc["scenario"] = {{"num_static", c.base.num_static},
                     {"num_mobile", c.base.num_mobile},
                     {"max_steps", c.base.max_steps},
                     {"travel_range_i", c.base.travel_range_i},
                     {"travel_range_j", c.base.travel_range_j},
                     {"static_overlap_limit", c.base.static_overlap_limit},
                     {"mobile_overlap_limit", c.base.mobile_overlap_limit},
                     {"coverage_ratio", ratio(c.base.coverage_ratio)}};
  json sweeps = json::array();
  for (const auto& b : c.sweeps) {
    json j = json::object();
    if (!b.num_static.empty()) j["num_static"] = b.num_static;
    if (!b.num_mobile.empty()) j["num_mobile"] = b.num_mobile;
    if (!b.max_steps.empty()) j["max_steps"] = b.max_steps;
    if (!b.travel_range.empty()) j["travel_range"] = b.travel_range;
    if (!b.sensing_radius.empty()) j["sensing_radius"] = b.sensing_radius;
    if (!b.coverage_ratio.empty()) {
      json list = json::array();
      for (const auto& r : b.coverage_ratio) list.push_back(ratio(r));
      j["coverage_ratio"] = list;
    }
    sweeps.push_back(j);
  }
  doc["sweeps"] = sweeps;
  json strategies = json::array();
  for (const auto& s : c.strategies) {
    json j = {{"static", to_string(s.static_strategy)}, {"mobile", to_string(s.mobile_strategy)}};
    if (auto it = c.node_limits.find(s); it != c.node_limits.end()) j["max_nodes"] = it->second;
    strategies.push_back(j);
  }
  doc["strategies"] = strategies;
  doc["seeds"] = c.seeds;
  doc["solver"] = {{"max_seconds", c.solver.max_seconds},
                   {"max_nodes", c.solver.max_nodes},
                   {"branching", c.solver.branching_rule == bip::BranchingRule::kMostFractional ? "most-fractional"
                                                                                                : "first-fractional"}};
  if (!c.output.empty()) doc["output"] = c.output;
  if (c.workers > 0) doc["workers"] = c.workers;
  return doc;
}

}  // namespace meshplan::bench
