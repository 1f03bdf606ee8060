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

// Best-first branch-and-bound over the LP relaxation. All nodes share one
// DualSimplex instance; moving to a node only rewrites structural bounds.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <queue>
#include <vector>

#include "meshplan/bip/model.hpp"
#include "meshplan/bip/simplex.hpp"

namespace meshplan::bip {

namespace detail {

struct Fixing {
  int var;
  std::uint8_t value;
  std::shared_ptr<const Fixing> parent;
};

struct Node {
  double key;    // comparable bound in minimization form (lower is better)
  double bound;  // parent LP bound, model sense
  int depth;
  int branch_var;
  int branch_value;
  std::int64_t seq;
  std::shared_ptr<const Fixing> fixings;
};

// Priority order: best bound, then deeper, then lower branching variable,
// then the 1-branch before the 0-branch, then creation order.
struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const {
    if (a.key != b.key) return a.key > b.key;
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.branch_var != b.branch_var) return a.branch_var > b.branch_var;
    if (a.branch_value != b.branch_value) return a.branch_value < b.branch_value;
    return a.seq > b.seq;
  }
};

}  // namespace detail

/// Exact 0/1 solve. Deterministic for a fixed model and config unless the time
/// limit interrupts the search.
inline IPSolution solve_exact(const IPModel& model, const SolverConfig& config = {}) {
  validate(model);
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const int n = model.num_vars;
  const bool maximize = model.sense == Sense::kMaximize;
  const bool integral_obj = has_integer_objective(model);
  const double sign = maximize ? -1.0 : 1.0;  // minimization form
  constexpr double kBoundSlack = 1e-6;

  // Objective bound in minimization form, rounded up when objective values of
  // 0/1 points are integers.
  auto key_of = [&](double bound) {
    const double v = sign * bound;
    return integral_obj ? std::ceil(v - kBoundSlack) : v;
  };

  IPSolution result;
  DualSimplex lp(model, config.lp_feasibility_tolerance);
  bool have_incumbent = false;
  double incumbent_min = 0.0;  // minimization form

  std::priority_queue<detail::Node, std::vector<detail::Node>, detail::NodeAfter> open;
  std::int64_t seq = 0;
  open.push({-std::numeric_limits<double>::infinity(), 0.0, 0, -1, 1, seq++, nullptr});

  std::vector<double> lo(n, 0.0), hi(n, 1.0);
  std::vector<std::uint8_t> candidate(n, 0);
  SolveStatus limit_status = SolveStatus::kOptimal;

  while (!open.empty()) {
    if (result.stats.nodes >= config.max_nodes) {
      limit_status = SolveStatus::kNodeLimit;
      break;
    }
    if ((result.stats.nodes & 63) == 0 && elapsed() > config.max_seconds) {
      limit_status = SolveStatus::kTimeLimit;
      break;
    }
    detail::Node node = open.top();
    open.pop();
    if (have_incumbent && node.key >= incumbent_min - kBoundSlack) continue;
    ++result.stats.nodes;

    std::fill(lo.begin(), lo.end(), 0.0);
    std::fill(hi.begin(), hi.end(), 1.0);
    for (const detail::Fixing* f = node.fixings.get(); f != nullptr; f = f->parent.get()) {
      lo[f->var] = hi[f->var] = f->value;
    }
    for (int j = 0; j < n; ++j)
      if (lp.lower(j) != lo[j] || lp.upper(j) != hi[j]) lp.set_bounds(j, lo[j], hi[j]);

    const LpStatus status = lp.solve(-1, /*exact=*/!integral_obj);
    if (status == LpStatus::kIterationLimit) {
      throw SolverError("LP iteration limit reached at branch-and-bound node " +
                        std::to_string(result.stats.nodes));
    }
    if (status == LpStatus::kInfeasible) continue;
    const double bound = lp.bound();
    const double key = key_of(bound);
    if (have_incumbent && key >= incumbent_min - kBoundSlack) continue;

    int branch = -1;
    double best_score = -1.0;
    for (int j = 0; j < n; ++j) {
      const double v = lp.value(j);
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac <= config.integrality_tolerance) continue;
      if (config.branching_rule == BranchingRule::kFirstFractional) {
        branch = j;
        break;
      }
      if (frac > best_score + 1e-9) {
        best_score = frac;
        branch = j;
      }
    }

    if (branch < 0) {
      for (int j = 0; j < n; ++j) candidate[j] = lp.value(j) > 0.5 ? 1 : 0;
      if (is_feasible(model, candidate)) {
        const double value = sign * objective_value(model, candidate);
        if (!have_incumbent || value < incumbent_min - 1e-9) {
          have_incumbent = true;
          incumbent_min = value;
          result.assignment = candidate;
        }
        // the bound may trail the vertex value; only then is the subtree still open
        if (key >= value - kBoundSlack) continue;
      }
      // Rounded point misses a constraint, or the bound left a gap: branch on
      // the least settled free variable.
      double worst = 0.0;
      for (int j = 0; j < n; ++j) {
        if (lo[j] == hi[j]) continue;
        const double v = lp.value(j);
        const double frac = std::min(v, 1.0 - v);
        if (branch < 0 || frac > worst) {
          worst = frac;
          branch = j;
        }
      }
      if (branch < 0) continue;
    }

    for (int value : {1, 0}) {
      auto fix = std::make_shared<const detail::Fixing>(
          detail::Fixing{branch, static_cast<std::uint8_t>(value), node.fixings});
      open.push({key, bound, node.depth + 1, branch, value, seq++, std::move(fix)});
    }
  }

  result.stats.lp_iterations = lp.iterations();
  result.stats.seconds = elapsed();
  if (limit_status != SolveStatus::kOptimal) {
    result.status = limit_status;
  } else {
    result.status = have_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  }
  if (have_incumbent) result.objective_value = objective_value(model, result.assignment);
  return result;
}

}  // namespace meshplan::bip
