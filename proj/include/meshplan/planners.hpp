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

// Builders for the three placement/path formulations, their decoders and the
// sequential static-then-mobile planning pipeline.
//
// Static placement (one binary x[s][cell] per node and cell):
//   sum_cell x[s][cell] = 1                          one cell per node
//   cs[s][cell] = sum_{nb_r(cell)} x[s][.]           per-node coverage
//   sum_s cs[s][cell] <= static_overlap_limit
//   y[cell] <= sum_s cs[s][cell]                     y is a unique-coverage flag
//   maximize  sum_cell den*y + sum_boundary num*y    (alpha = num/den)
//
// Mobile planning (x over the whole grid, coverage only over cells the static
// layer leaves uncovered, U):
//   sum_cell x[l][k][cell] = 1   (<= 1 when halting is allowed)
//   x[l][k+1][cell] <= sum_{box_rho(cell)} x[l][k][.]
//   cm[l][k][u] = sum_{nb_r(u)} x[l][k][.]
//   cm[l][k][u] <= c[u] <= sum_{l,k} cm[l][k][u],   sum_{l,k} cm[l][k][u] <= overlap
//   coverage mode:  maximize sum_u c[u]
//   movement mode:  minimize sum x  s.t.  static_covered + sum_u c[u] >= cr * cells

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshplan/bip/branch_and_bound.hpp"
#include "meshplan/bip/model.hpp"
#include "meshplan/grid.hpp"

namespace meshplan {

struct ScenarioParams {
  GridSpec grid;
  int num_static = 1;
  int num_mobile = 1;
  int max_steps = 2;
  int travel_range_i = 2;
  int travel_range_j = 2;
  int static_overlap_limit = 2;
  int mobile_overlap_limit = 2;
  double coverage_ratio_target = 1.0;
};

inline void validate(const ScenarioParams& p) {
  validate(p.grid);
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  need(p.num_static >= 0, "num_static must be non-negative");
  need(p.num_mobile >= 0, "num_mobile must be non-negative");
  need(p.max_steps >= 0, "max_steps must be non-negative");
  need(p.travel_range_i >= 0 && p.travel_range_j >= 0, "travel range must be non-negative");
  need(p.static_overlap_limit >= 0, "static overlap limit must be non-negative");
  need(p.mobile_overlap_limit >= 0, "mobile overlap limit must be non-negative");
  need(p.coverage_ratio_target > 0.0 && p.coverage_ratio_target <= 1.0,
       "coverage ratio target must lie in (0, 1]");
}

/// Number of cells the combined plan must cover to reach `ratio`.
inline int cells_for_ratio(const GridSpec& grid, double ratio) {
  return static_cast<int>(std::ceil(ratio * grid.cell_count() - 1e-9));
}

struct StaticEncoding {
  GridSpec grid;
  int num_static = 0;
  std::vector<int> x;  // [s * cells + cell]

  int x_var(int s, int cell) const { return x[static_cast<std::size_t>(s) * grid.cell_count() + cell]; }
};

struct StaticModel {
  bip::IPModel model;
  StaticEncoding encoding;
};

struct MobileEncoding {
  GridSpec grid;
  int num_mobile = 0;
  int steps = 0;
  int travel_range_i = 0;
  int travel_range_j = 0;
  bool allow_halt = false;
  std::vector<CellCoord> uncovered;
  std::vector<int> x;          // [(l * steps + k) * cells + cell]
  std::vector<int> step_cover; // [(l * steps + k) * |U| + u]
  std::vector<int> cover;      // [u]

  int x_var(int l, int k, int cell) const {
    return x[(static_cast<std::size_t>(l) * steps + k) * grid.cell_count() + cell];
  }
  int step_cover_var(int l, int k, int u) const {
    return step_cover[(static_cast<std::size_t>(l) * steps + k) * uncovered.size() + u];
  }
};

struct MobileModel {
  bip::IPModel model;
  MobileEncoding encoding;
};

namespace detail {

inline std::string cell_label(const char* prefix, CellCoord c) {
  return std::string(prefix) + "_" + std::to_string(c.i) + "_" + std::to_string(c.j);
}

}  // namespace detail

inline StaticModel build_static_model(const ScenarioParams& params) {
  validate(params);
  if (params.num_static < 1) throw std::invalid_argument("static placement needs num_static >= 1");
  const GridSpec& g = params.grid;
  const int cells = g.cell_count();
  const int r = g.sensing_radius;
  const Rational alpha = reduced(g.boundary_weight);

  StaticModel out;
  auto& m = out.model;
  m.sense = bip::Sense::kMaximize;
  out.encoding.grid = g;
  out.encoding.num_static = params.num_static;

  for (int s = 0; s < params.num_static; ++s)
    for (int idx = 0; idx < cells; ++idx)
      out.encoding.x.push_back(
          m.add_var(0.0, detail::cell_label(("x" + std::to_string(s + 1)).c_str(), g.cell_at(idx))));
  std::vector<int> cs;
  for (int s = 0; s < params.num_static; ++s)
    for (int idx = 0; idx < cells; ++idx)
      cs.push_back(
          m.add_var(0.0, detail::cell_label(("cs" + std::to_string(s + 1)).c_str(), g.cell_at(idx))));
  std::vector<int> y;
  for (int idx = 0; idx < cells; ++idx) {
    const CellCoord c = g.cell_at(idx);
    const double weight =
        static_cast<double>(alpha.den) + (g.is_boundary(c) ? static_cast<double>(alpha.num) : 0.0);
    y.push_back(m.add_var(weight, detail::cell_label("y", c)));
  }

  for (int s = 0; s < params.num_static; ++s) {
    std::vector<bip::Term> terms;
    for (int idx = 0; idx < cells; ++idx) terms.push_back({out.encoding.x_var(s, idx), 1.0});
    m.add_constraint(std::move(terms), bip::Relation::kEqual, 1.0, "place_" + std::to_string(s + 1));
  }
  for (int s = 0; s < params.num_static; ++s) {
    for (int idx = 0; idx < cells; ++idx) {
      std::vector<bip::Term> terms{{cs[s * cells + idx], 1.0}};
      for (const auto& d : box_cells(g, g.cell_at(idx), r, r))
        terms.push_back({out.encoding.x_var(s, g.index_of(d)), -1.0});
      m.add_constraint(std::move(terms), bip::Relation::kEqual, 0.0);
    }
  }
  for (int idx = 0; idx < cells; ++idx) {
    std::vector<bip::Term> overlap;
    std::vector<bip::Term> unique{{y[idx], 1.0}};
    for (int s = 0; s < params.num_static; ++s) {
      overlap.push_back({cs[s * cells + idx], 1.0});
      unique.push_back({cs[s * cells + idx], -1.0});
    }
    m.add_constraint(std::move(overlap), bip::Relation::kLessEqual, params.static_overlap_limit);
    m.add_constraint(std::move(unique), bip::Relation::kLessEqual, 0.0);
  }
  return out;
}

namespace detail {

inline MobileModel build_mobile_model(const ScenarioParams& params, const CellSet& uncovered,
                                      bool movement_mode, int static_covered_count) {
  validate(params);
  if (params.num_mobile < 1 || params.max_steps < 1) {
    throw std::invalid_argument("mobile planning needs num_mobile >= 1 and max_steps >= 1");
  }
  const GridSpec& g = params.grid;
  const int cells = g.cell_count();
  const int r = g.sensing_radius;
  const int L = params.num_mobile, K = params.max_steps;

  MobileModel out;
  auto& m = out.model;
  auto& enc = out.encoding;
  m.sense = movement_mode ? bip::Sense::kMinimize : bip::Sense::kMaximize;
  enc.grid = g;
  enc.num_mobile = L;
  enc.steps = K;
  enc.travel_range_i = params.travel_range_i;
  enc.travel_range_j = params.travel_range_j;
  enc.allow_halt = movement_mode;
  enc.uncovered.assign(uncovered.begin(), uncovered.end());
  for (const auto& u : enc.uncovered)
    if (!g.contains(u)) throw std::invalid_argument("uncovered cell outside the grid");
  const int U = static_cast<int>(enc.uncovered.size());

  for (int l = 0; l < L; ++l)
    for (int k = 0; k < K; ++k)
      for (int idx = 0; idx < cells; ++idx)
        enc.x.push_back(m.add_var(
            movement_mode ? 1.0 : 0.0,
            cell_label(("x" + std::to_string(l + 1) + "_" + std::to_string(k + 1)).c_str(),
                       g.cell_at(idx))));
  for (int l = 0; l < L; ++l)
    for (int k = 0; k < K; ++k)
      for (int u = 0; u < U; ++u)
        enc.step_cover.push_back(m.add_var(
            0.0, cell_label(("cm" + std::to_string(l + 1) + "_" + std::to_string(k + 1)).c_str(),
                            enc.uncovered[u])));
  for (int u = 0; u < U; ++u)
    enc.cover.push_back(m.add_var(movement_mode ? 0.0 : 1.0, cell_label("c", enc.uncovered[u])));

  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k) {
      std::vector<bip::Term> terms;
      for (int idx = 0; idx < cells; ++idx) terms.push_back({enc.x_var(l, k, idx), 1.0});
      m.add_constraint(std::move(terms),
                       movement_mode ? bip::Relation::kLessEqual : bip::Relation::kEqual, 1.0,
                       "place_" + std::to_string(l + 1) + "_" + std::to_string(k + 1));
    }
  }
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k + 1 < K; ++k) {
      for (int idx = 0; idx < cells; ++idx) {
        std::vector<bip::Term> terms{{enc.x_var(l, k + 1, idx), 1.0}};
        for (const auto& d :
             box_cells(g, g.cell_at(idx), params.travel_range_i, params.travel_range_j))
          terms.push_back({enc.x_var(l, k, g.index_of(d)), -1.0});
        m.add_constraint(std::move(terms), bip::Relation::kLessEqual, 0.0);
      }
    }
  }
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k) {
      for (int u = 0; u < U; ++u) {
        std::vector<bip::Term> terms{{enc.step_cover_var(l, k, u), 1.0}};
        for (const auto& d : box_cells(g, enc.uncovered[u], r, r))
          terms.push_back({enc.x_var(l, k, g.index_of(d)), -1.0});
        m.add_constraint(std::move(terms), bip::Relation::kEqual, 0.0);
        m.add_constraint({{enc.step_cover_var(l, k, u), 1.0}, {enc.cover[u], -1.0}},
                         bip::Relation::kLessEqual, 0.0);
      }
    }
  }
  for (int u = 0; u < U; ++u) {
    std::vector<bip::Term> upper{{enc.cover[u], 1.0}};
    std::vector<bip::Term> overlap;
    for (int l = 0; l < L; ++l)
      for (int k = 0; k < K; ++k) {
        upper.push_back({enc.step_cover_var(l, k, u), -1.0});
        overlap.push_back({enc.step_cover_var(l, k, u), 1.0});
      }
    m.add_constraint(std::move(upper), bip::Relation::kLessEqual, 0.0);
    m.add_constraint(std::move(overlap), bip::Relation::kLessEqual, params.mobile_overlap_limit);
  }
  if (movement_mode) {
    std::vector<bip::Term> terms;
    for (int u = 0; u < U; ++u) terms.push_back({enc.cover[u], 1.0});
    const int needed = cells_for_ratio(g, params.coverage_ratio_target) - static_covered_count;
    m.add_constraint(std::move(terms), bip::Relation::kGreaterEqual, needed, "coverage_ratio");
  }
  return out;
}

}  // namespace detail

inline MobileModel build_cov_model(const ScenarioParams& params, const CellSet& uncovered) {
  return detail::build_mobile_model(params, uncovered, false, 0);
}

inline MobileModel build_mov_model(const ScenarioParams& params, const CellSet& uncovered,
                                   int static_covered_count) {
  return detail::build_mobile_model(params, uncovered, true, static_covered_count);
}

namespace detail {

inline void require_decodable(const bip::IPSolution& solution, bool allow_incumbent) {
  if (solution.optimal()) return;
  if (allow_incumbent && !solution.assignment.empty()) return;
  throw std::invalid_argument(std::string("cannot decode a solution with status ") +
                              bip::to_string(solution.status));
}

}  // namespace detail

/// Reads the placement of each static node. Refuses non-optimal solutions
/// unless `allow_incumbent` is set and an incumbent exists.
inline StaticPlan decode_static(const bip::IPSolution& solution, const StaticEncoding& enc,
                                bool allow_incumbent = false) {
  detail::require_decodable(solution, allow_incumbent);
  StaticPlan plan;
  for (int s = 0; s < enc.num_static; ++s) {
    int found = -1;
    for (int idx = 0; idx < enc.grid.cell_count(); ++idx) {
      if (!solution.assignment[enc.x_var(s, idx)]) continue;
      if (found >= 0) throw std::logic_error("static node placed in two cells");
      found = idx;
    }
    if (found < 0) throw std::logic_error("static node without a placement");
    plan.positions.push_back(enc.grid.cell_at(found));
  }
  return plan;
}

/// Reads trajectories. Timesteps with no position (allowed in movement mode)
/// are marked inactive and hold the node's last active cell.
inline MobilePlan decode_mobile(const bip::IPSolution& solution, const MobileEncoding& enc,
                                bool allow_incumbent = false) {
  detail::require_decodable(solution, allow_incumbent);
  MobilePlan plan;
  plan.travel_range_i = enc.travel_range_i;
  plan.travel_range_j = enc.travel_range_j;
  bool any_inactive = false;
  std::vector<std::vector<bool>> active;
  for (int l = 0; l < enc.num_mobile; ++l) {
    std::vector<CellCoord> path;
    std::vector<bool> on;
    CellCoord hold{1, 1};
    for (int k = 0; k < enc.steps; ++k) {
      int found = -1;
      for (int idx = 0; idx < enc.grid.cell_count(); ++idx) {
        if (!solution.assignment[enc.x_var(l, k, idx)]) continue;
        if (found >= 0) throw std::logic_error("mobile node placed in two cells at one timestep");
        found = idx;
      }
      if (found < 0) {
        if (!enc.allow_halt) throw std::logic_error("mobile node without a position");
        any_inactive = true;
        path.push_back(hold);
        on.push_back(false);
      } else {
        hold = enc.grid.cell_at(found);
        path.push_back(hold);
        on.push_back(true);
      }
    }
    plan.trajectories.push_back(std::move(path));
    active.push_back(std::move(on));
  }
  if (any_inactive) plan.active = std::move(active);
  try {
    validate(enc.grid, plan);
  } catch (const InvalidPlan& e) {
    throw std::logic_error(std::string("decoded trajectory breaks the travel range: ") + e.what());
  }
  return plan;
}

enum class MobileMode { kCoverage, kMovement };

struct MobileResult {
  MobilePlan plan;
  bip::IPSolution solution;
  bool solved = false;  // false when no model was needed (no nodes or no steps)
};

struct NetworkPlan {
  StaticPlan static_plan;
  MobilePlan mobile_plan;
  PlanEvaluation evaluation;
  bip::IPSolution static_solution;
  MobileResult mobile;
  bool optimal = true;
  bool coverage_target_unreachable = false;
};

/// Plans the mobile layer on top of an existing static placement.
inline MobileResult plan_mobile(const ScenarioParams& params, const StaticPlan& static_plan,
                                MobileMode mode, const bip::SolverConfig& config = {}) {
  MobileResult out;
  out.plan.travel_range_i = params.travel_range_i;
  out.plan.travel_range_j = params.travel_range_j;
  const auto static_eval = static_coverage(params.grid, static_plan);
  if (params.num_mobile == 0 || params.max_steps == 0) {
    out.solution.status = bip::SolveStatus::kOptimal;
    if (mode == MobileMode::kMovement &&
        static_eval.covered_count() < cells_for_ratio(params.grid, params.coverage_ratio_target)) {
      out.solution.status = bip::SolveStatus::kInfeasible;
    }
    return out;
  }
  const MobileModel model =
      mode == MobileMode::kCoverage
          ? build_cov_model(params, static_eval.uncovered_cells)
          : build_mov_model(params, static_eval.uncovered_cells, static_eval.covered_count());
  out.solution = bip::solve_exact(model.model, config);
  out.solved = true;
  if (!out.solution.assignment.empty()) {
    out.plan = decode_mobile(out.solution, model.encoding, /*allow_incumbent=*/true);
  }
  return out;
}

inline bip::IPSolution solve_static(const ScenarioParams& params, StaticPlan& plan,
                                    const bip::SolverConfig& config = {}) {
  plan.positions.clear();
  if (params.num_static == 0) {
    bip::IPSolution trivial;
    trivial.status = bip::SolveStatus::kOptimal;
    return trivial;
  }
  const StaticModel model = build_static_model(params);
  auto solution = bip::solve_exact(model.model, config);
  if (!solution.assignment.empty()) plan = decode_static(solution, model.encoding, true);
  return solution;
}

/// Static placement first, then mobile planning over the cells it leaves
/// uncovered, then evaluation of the combined plan.
inline NetworkPlan plan_network(const ScenarioParams& params, MobileMode mode,
                                const bip::SolverConfig& config = {}) {
  validate(params);
  NetworkPlan out;
  out.static_solution = solve_static(params, out.static_plan, config);
  if (out.static_solution.assignment.empty() && params.num_static > 0) {
    out.optimal = false;
    out.evaluation = static_coverage(params.grid, out.static_plan);
    return out;
  }
  out.mobile = plan_mobile(params, out.static_plan, mode, config);
  out.mobile_plan = out.mobile.plan;
  out.optimal = out.static_solution.optimal() && out.mobile.solution.optimal();
  out.coverage_target_unreachable =
      mode == MobileMode::kMovement && out.mobile.solution.status == bip::SolveStatus::kInfeasible;
  out.evaluation = evaluate_combined(params.grid, out.static_plan, out.mobile_plan);
  return out;
}

}  // namespace meshplan
