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

// 0/1 integer linear programs: representation, validation, exact feasibility
// checks and a plain-text dump in an LP-format dialect.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meshplan::bip {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

struct IPModel {
  int num_vars = 0;
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;  // one coefficient per variable
  std::vector<LinearConstraint> constraints;
  std::vector<std::string> var_labels;  // optional

  int add_var(double objective_coef, std::string label = {}) {
    objective.push_back(objective_coef);
    if (!label.empty() || !var_labels.empty()) {
      var_labels.resize(static_cast<std::size_t>(num_vars));
      var_labels.push_back(std::move(label));
    }
    return num_vars++;
  }

  void add_constraint(std::vector<Term> terms, Relation relation, double rhs,
                      std::string name = {}) {
    constraints.push_back({std::move(terms), relation, rhs, std::move(name)});
  }
};

inline void validate(const IPModel& model) {
  if (model.num_vars < 0) throw std::invalid_argument("negative variable count");
  if (static_cast<int>(model.objective.size()) != model.num_vars) {
    throw std::invalid_argument("objective length differs from variable count");
  }
  if (!model.var_labels.empty() && static_cast<int>(model.var_labels.size()) != model.num_vars) {
    throw std::invalid_argument("label count differs from variable count");
  }
  for (double c : model.objective)
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective coefficient");
  std::vector<int> seen(static_cast<std::size_t>(model.num_vars), -1);
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    const auto& row = model.constraints[r];
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite right-hand side");
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= model.num_vars) {
        throw std::invalid_argument("constraint " + std::to_string(r) +
                                    " references variable " + std::to_string(t.var) +
                                    " outside the model");
      }
      if (!std::isfinite(t.coef)) throw std::invalid_argument("non-finite constraint coefficient");
      if (seen[t.var] == static_cast<int>(r)) {
        throw std::invalid_argument("constraint " + std::to_string(r) + " lists variable " +
                                    std::to_string(t.var) + " twice");
      }
      seen[t.var] = static_cast<int>(r);
    }
  }
}

inline bool is_integer_value(double v) {
  return std::abs(v) < 9.0e15 && v == std::nearbyint(v);
}

/// True when every coefficient and right-hand side is integral, in which case
/// feasibility of 0/1 points is checked in exact integer arithmetic.
inline bool has_integer_data(const IPModel& model) {
  for (double c : model.objective)
    if (!is_integer_value(c)) return false;
  for (const auto& row : model.constraints) {
    if (!is_integer_value(row.rhs)) return false;
    for (const auto& t : row.terms)
      if (!is_integer_value(t.coef)) return false;
  }
  return true;
}

inline bool has_integer_objective(const IPModel& model) {
  for (double c : model.objective)
    if (!is_integer_value(c)) return false;
  return true;
}

inline double objective_value(const IPModel& model, const std::vector<std::uint8_t>& x) {
  double value = 0.0;
  for (int j = 0; j < model.num_vars; ++j)
    if (x[j]) value += model.objective[j];
  return value;
}

/// Checks a 0/1 point against every constraint. Integral data is checked
/// exactly; otherwise a 1e-9 relative slack is allowed.
inline bool is_feasible(const IPModel& model, const std::vector<std::uint8_t>& x) {
  if (static_cast<int>(x.size()) != model.num_vars) return false;
  const bool exact = has_integer_data(model);
  for (const auto& row : model.constraints) {
    bool ok = true;
    if (exact) {
      std::int64_t lhs = 0;
      for (const auto& t : row.terms)
        if (x[t.var]) lhs += static_cast<std::int64_t>(t.coef);
      const auto rhs = static_cast<std::int64_t>(row.rhs);
      switch (row.relation) {
        case Relation::kLessEqual: ok = lhs <= rhs; break;
        case Relation::kEqual: ok = lhs == rhs; break;
        case Relation::kGreaterEqual: ok = lhs >= rhs; break;
      }
    } else {
      double lhs = 0.0, scale = std::abs(row.rhs);
      for (const auto& t : row.terms) {
        if (x[t.var]) lhs += t.coef;
        scale += std::abs(t.coef);
      }
      const double tol = 1e-9 * std::max(1.0, scale);
      switch (row.relation) {
        case Relation::kLessEqual: ok = lhs <= row.rhs + tol; break;
        case Relation::kEqual: ok = std::abs(lhs - row.rhs) <= tol; break;
        case Relation::kGreaterEqual: ok = lhs >= row.rhs - tol; break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

enum class SolveStatus { kOptimal, kInfeasible, kNodeLimit, kTimeLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kNodeLimit: return "node_limit";
    case SolveStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double seconds = 0.0;
};

struct IPSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<std::uint8_t> assignment;  // empty unless an incumbent exists
  double objective_value = 0.0;
  SolveStats stats;

  bool optimal() const { return status == SolveStatus::kOptimal; }
  bool has_incumbent() const { return !assignment.empty() || status == SolveStatus::kOptimal; }
};

enum class BranchingRule { kMostFractional, kFirstFractional };

struct SolverConfig {
  double integrality_tolerance = 1e-6;
  double lp_feasibility_tolerance = 1e-6;
  std::int64_t max_nodes = 5'000'000;
  double max_seconds = 600.0;
  BranchingRule branching_rule = BranchingRule::kMostFractional;
};

inline void validate(const SolverConfig& config) {
  auto tol_ok = [](double t) { return t > 0.0 && t <= 1e-4; };
  if (!tol_ok(config.integrality_tolerance) || !tol_ok(config.lp_feasibility_tolerance)) {
    throw std::invalid_argument("solver tolerances must lie in (0, 1e-4]");
  }
  if (config.max_nodes <= 0) throw std::invalid_argument("max_nodes must be positive");
  if (!(config.max_seconds > 0.0)) throw std::invalid_argument("max_seconds must be positive");
}

/// Writes the model in a CPLEX-LP-like dialect:
///
///   Maximize
///    obj: 2 x0 + 3 x1
///   Subject To
///    c0: x0 + x1 <= 1
///   Binary
///    x0 x1
///   End
///
/// Variables are named by label when present, otherwise x<index>.
inline void write_lp(const IPModel& model, std::ostream& os) {
  auto name = [&](int j) {
    if (!model.var_labels.empty() && !model.var_labels[j].empty()) return model.var_labels[j];
    return "x" + std::to_string(j);
  };
  auto write_terms = [&](const std::vector<Term>& terms) {
    if (terms.empty()) {
      os << " 0";
      return;
    }
    bool first = true;
    for (const auto& t : terms) {
      const double mag = std::abs(t.coef);
      os << (t.coef < 0 ? (first ? " -" : " - ") : (first ? " " : " + "));
      if (mag != 1.0) os << mag << ' ';
      os << name(t.var);
      first = false;
    }
  };
  os << (model.sense == Sense::kMaximize ? "Maximize\n" : "Minimize\n") << " obj:";
  std::vector<Term> obj;
  for (int j = 0; j < model.num_vars; ++j)
    if (model.objective[j] != 0.0) obj.push_back({j, model.objective[j]});
  write_terms(obj);
  os << "\nSubject To\n";
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    const auto& row = model.constraints[r];
    os << ' ' << (row.name.empty() ? "c" + std::to_string(r) : row.name) << ':';
    write_terms(row.terms);
    os << (row.relation == Relation::kLessEqual  ? " <= "
           : row.relation == Relation::kEqual   ? " = "
                                                 : " >= ")
       << row.rhs << '\n';
  }
  os << "Binary\n";
  for (int j = 0; j < model.num_vars; ++j) os << ' ' << name(j) << ((j + 1) % 8 == 0 ? "\n" : "");
  os << "\nEnd\n";
}

}  // namespace meshplan::bip
