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

// Sweep execution. Jobs (axis point x strategy pair x seed) are independent
// and may run on several threads; rows are sorted before they are returned,
// so output never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "meshplan/baselines.hpp"
#include "meshplan/bench/config.hpp"
#include "meshplan/grid.hpp"
#include "meshplan/planners.hpp"

namespace meshplan::bench {

enum class RowKind { kRun, kMean, kStd };

inline const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::kRun: return "run";
    case RowKind::kMean: return "mean";
    case RowKind::kStd: return "std";
  }
  return "?";
}

struct ResultRow {
  RowKind kind = RowKind::kRun;
  AxisPoint point;
  StrategyPair strategy;
  std::optional<std::uint64_t> seed;  // empty for deterministic pairs and summaries
  std::string status;                 // solver status, "heuristic" without any solve
  double covered_cells = 0;           // means and deviations are fractional
  double total_movements = 0;
  double visited_cells = 0;
  int target_cells = 0;  // coverage requirement handed to milp-mov, 0 otherwise
  std::optional<double> static_objective;
  std::optional<double> mobile_objective;
  std::int64_t nodes = 0;  // branch-and-bound nodes over every solve of the job
  double solve_ms = 0;

  int cell_count() const { return point.rows * point.cols; }
  double coverage_percent() const { return 100.0 * covered_cells / cell_count(); }
};

inline bool row_order(const ResultRow& a, const ResultRow& b) {
  if (!(a.point == b.point)) return a.point < b.point;
  if (a.strategy != b.strategy) return a.strategy < b.strategy;
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.seed.value_or(0) < b.seed.value_or(0);
}

/// Worker count: explicit value, else MESHPLAN_WORKERS, else hardware threads.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MESHPLAN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
    throw std::invalid_argument(std::string("MESHPLAN_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline const char* worse_status(const char* current, const bip::IPSolution& s) {
  if (s.optimal()) return current;
  return bip::to_string(s.status);
}

inline ResultRow run_job(const AxisPoint& point, const StrategyPair& strategy,
                         std::optional<std::uint64_t> seed, const bip::SolverConfig& solver) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.point = point;
  row.strategy = strategy;
  row.seed = seed;
  ScenarioParams params = point.params();
  validate(params);
  const RngSeed rng{seed.value_or(0)};

  const char* status = "heuristic";
  bool solved_any = false;
  auto note = [&](const bip::IPSolution& s) {
    if (!solved_any) status = "optimal";
    solved_any = true;
    status = worse_status(status, s);
    row.nodes += s.stats.nodes;
  };

  StaticPlan static_plan;
  if (strategy.static_strategy == StaticStrategy::kMilp) {
    const auto s = solve_static(params, static_plan, solver);
    if (params.num_static > 0) {
      note(s);
      if (s.has_incumbent()) row.static_objective = s.objective_value;
    }
    if (static_plan.positions.size() != static_cast<std::size_t>(params.num_static)) {
      // no placement: report the empty network
      row.status = status;
      row.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      return row;
    }
  } else {
    static_plan = random_static_placement(params, rng);
  }

  MobilePlan mobile_plan;
  mobile_plan.travel_range_i = params.travel_range_i;
  mobile_plan.travel_range_j = params.travel_range_j;
  const auto uncovered = uncovered_after_static(params.grid, static_plan);
  switch (strategy.mobile_strategy) {
    case MobileStrategy::kRandom:
      mobile_plan = random_walk_path(params, rng);
      break;
    case MobileStrategy::kGreedy:
      mobile_plan = greedy_mobile_path(params, uncovered, rng);
      break;
    case MobileStrategy::kMilpCov: {
      const auto r = plan_mobile(params, static_plan, MobileMode::kCoverage, solver);
      if (r.solved) {
        note(r.solution);
        if (r.solution.has_incumbent()) row.mobile_objective = r.solution.objective_value;
      }
      mobile_plan = r.plan;
      break;
    }
    case MobileStrategy::kMilpMov: {
      if (!point.coverage_ratio) {
        // match what the coverage planner reaches on this placement
        const auto cov = plan_mobile(params, static_plan, MobileMode::kCoverage, solver);
        if (cov.solved) note(cov.solution);
        const int reached = evaluate_combined(params.grid, static_plan, cov.plan).covered_count();
        params.coverage_ratio_target = static_cast<double>(reached) / params.grid.cell_count();
      }
      row.target_cells = cells_for_ratio(params.grid, params.coverage_ratio_target);
      const auto r = plan_mobile(params, static_plan, MobileMode::kMovement, solver);
      if (r.solved || r.solution.status == bip::SolveStatus::kInfeasible) note(r.solution);
      if (r.solution.has_incumbent()) row.mobile_objective = r.solution.objective_value;
      mobile_plan = r.plan;
      break;
    }
  }
  const auto eval = evaluate_combined(params.grid, static_plan, mobile_plan);
  row.covered_cells = eval.covered_count();
  row.total_movements = eval.total_movements;
  row.visited_cells = eval.visited_cells;
  row.status = status;
  row.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

inline void add_summaries(std::vector<ResultRow>& rows) {
  std::map<std::pair<AxisPoint, StrategyPair>, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows)
    if (r.kind == RowKind::kRun && r.strategy.stochastic()) groups[{r.point, r.strategy}].push_back(&r);
  std::vector<ResultRow> extra;
  for (const auto& [key, members] : groups) {
    const double n = static_cast<double>(members.size());
    auto mean_of = [&](auto field) {
      double s = 0;
      for (const auto* m : members) s += field(*m);
      return s / n;
    };
    auto std_of = [&](auto field, double mean) {
      double s = 0;
      for (const auto* m : members) s += (field(*m) - mean) * (field(*m) - mean);
      return std::sqrt(s / (n - 1));
    };
    auto covered = [](const ResultRow& r) { return r.covered_cells; };
    auto moves = [](const ResultRow& r) { return r.total_movements; };
    auto visited = [](const ResultRow& r) { return r.visited_cells; };
    auto nodes = [](const ResultRow& r) { return static_cast<double>(r.nodes); };

    ResultRow mean;
    mean.kind = RowKind::kMean;
    mean.point = key.first;
    mean.strategy = key.second;
    mean.status = "";
    for (const auto* m : members)
      if (m->status != "optimal" && m->status != "heuristic") mean.status = "partial";
    mean.covered_cells = mean_of(covered);
    mean.total_movements = mean_of(moves);
    mean.visited_cells = mean_of(visited);
    mean.nodes = static_cast<std::int64_t>(std::llround(mean_of(nodes)));
    extra.push_back(mean);
    if (members.size() >= 2) {
      ResultRow dev = mean;
      dev.kind = RowKind::kStd;
      dev.covered_cells = std_of(covered, mean.covered_cells);
      dev.total_movements = std_of(moves, mean.total_movements);
      dev.visited_cells = std_of(visited, mean.visited_cells);
      dev.nodes = 0;
      extra.push_back(dev);
    }
  }
  rows.insert(rows.end(), extra.begin(), extra.end());
}

}  // namespace detail

struct RunOptions {
  int workers = 0;
  // called after each finished job with (done, total), possibly from several
  // threads at once; may be empty
  std::function<void(std::size_t, std::size_t)> progress = {};
};

/// Runs every (axis point, strategy pair, seed) job of the config. Random
/// pairs run once per seed and get mean/std summary rows; deterministic pairs
/// run once per axis point.
inline std::vector<ResultRow> run_scenario(const ScenarioConfig& config, const RunOptions& options = {}) {
  validate(config);
  struct Job {
    AxisPoint point;
    StrategyPair strategy;
    std::optional<std::uint64_t> seed;
  };
  std::vector<Job> jobs;
  for (const auto& point : expand_points(config)) {
    try {
      validate(point.params());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("$.sweeps", std::string("invalid sweep point: ") + e.what());
    }
    for (const auto& strategy : config.strategies) {
      if (strategy.stochastic()) {
        for (auto s : config.seeds) jobs.push_back({point, strategy, s});
      } else {
        jobs.push_back({point, strategy, std::nullopt});
      }
    }
  }

  std::vector<ResultRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0}, done{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      try {
        rows[k] = detail::run_job(jobs[k].point, jobs[k].strategy, jobs[k].seed,
                                  config.solver_for(jobs[k].strategy));
      } catch (...) {
        errors[k] = std::current_exception();
      }
      const auto finished = done.fetch_add(1) + 1;
      if (options.progress) options.progress(finished, jobs.size());
    }
  };
  const int threads = std::min<int>(resolve_workers(options.workers > 0 ? options.workers : config.workers),
                                    static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::add_summaries(rows);
  std::sort(rows.begin(), rows.end(), row_order);
  return rows;
}

}  // namespace meshplan::bench
