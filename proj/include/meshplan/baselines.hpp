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

// Reference strategies: random static placement, greedy and random-walk
// mobile paths.
//
// Randomness comes from std::mt19937_64 (MT19937-64, fully specified by the
// standard) seeded through SplitMix64 of (seed, stream). Bounded draws use
// rejection sampling rather than std::uniform_int_distribution, whose output
// is implementation-defined, so streams are identical across toolchains.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "meshplan/grid.hpp"
#include "meshplan/planners.hpp"

namespace meshplan {

struct RngSeed {
  std::uint64_t seed = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  // Distinct streams keep e.g. static placement and the random walk of the
  // same seed independent.
  static constexpr std::uint64_t kStaticStream = 1;
  static constexpr std::uint64_t kWalkStream = 2;

  explicit Rng(RngSeed seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed.seed ^ splitmix64(stream))) {}

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % n + 1) % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v > limit);
    return v % n;
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(below(items.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

/// N_s distinct cells, uniformly without replacement (partial Fisher-Yates
/// over row-major cell order).
inline StaticPlan random_static_placement(const ScenarioParams& params, RngSeed seed) {
  validate(params.grid);
  const int n = params.grid.cell_count();
  if (params.num_static < 0 || params.num_static > n)
    throw std::invalid_argument("random_static_placement: num_static must lie in [0, " +
                                std::to_string(n) + "]");
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed, Rng::kStaticStream);
  StaticPlan plan;
  for (int k = 0; k < params.num_static; ++k) {
    const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k)));
    std::swap(order[k], order[pick]);
    plan.positions.push_back(params.grid.cell_at(order[k]));
  }
  return plan;
}

/// Each timestep, nodes in index order take the reachable cell that newly
/// covers the most cells of `uncovered`, smallest (i, j) on ties. A cell is
/// admissible only if no uncovered cell around it would exceed the mobile
/// overlap limit; a node with no admissible cell halts for the rest of the
/// mission. The first timestep searches the whole grid. Greedy is fully
/// deterministic; `seed` is accepted for interface symmetry and ignored.
inline MobilePlan greedy_mobile_path(const ScenarioParams& params, const CellSet& uncovered,
                                     RngSeed seed = {}) {
  (void)seed;
  validate(params);
  const GridSpec& grid = params.grid;
  const int r = grid.sensing_radius;
  std::vector<char> target(static_cast<std::size_t>(grid.cell_count()), 0);
  for (const auto& c : uncovered) {
    if (!grid.contains(c)) throw std::invalid_argument("greedy_mobile_path: uncovered cell off grid");
    target[grid.index_of(c)] = 1;
  }
  std::vector<int> hits(target.size(), 0);

  MobilePlan plan;
  plan.travel_range_i = params.travel_range_i;
  plan.travel_range_j = params.travel_range_j;
  const auto L = static_cast<std::size_t>(params.num_mobile);
  const auto K = static_cast<std::size_t>(params.max_steps);
  plan.trajectories.assign(L, std::vector<CellCoord>(K, CellCoord{1, 1}));
  plan.active.assign(L, std::vector<bool>(K, true));
  std::vector<bool> halted(L, false);
  const auto everywhere = all_cells(grid);

  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t l = 0; l < L; ++l) {
      if (halted[l]) {
        plan.trajectories[l][k] = plan.trajectories[l][k - 1];
        plan.active[l][k] = false;
        continue;
      }
      const auto candidates =
          k == 0 ? everywhere
                 : box_cells(grid, plan.trajectories[l][k - 1], params.travel_range_i,
                             params.travel_range_j);
      int best_gain = -1;
      CellCoord best{};
      for (const auto& cand : candidates) {  // row-major, so first best wins ties
        int gain = 0;
        bool admissible = true;
        for (const auto& c : box_cells(grid, cand, r, r)) {
          const int idx = grid.index_of(c);
          if (!target[idx]) continue;
          if (hits[idx] + 1 > params.mobile_overlap_limit) admissible = false;
          if (hits[idx] == 0) ++gain;
        }
        if (admissible && gain > best_gain) {
          best_gain = gain;
          best = cand;
        }
      }
      if (best_gain < 0) {
        halted[l] = true;
        plan.active[l][k] = false;
        if (k > 0) plan.trajectories[l][k] = plan.trajectories[l][k - 1];
        continue;
      }
      plan.trajectories[l][k] = best;
      for (const auto& c : box_cells(grid, best, r, r)) {
        const int idx = grid.index_of(c);
        if (target[idx]) ++hits[idx];
      }
    }
  }
  bool all_active = true;
  for (std::size_t l = 0; l < L; ++l)
    if (halted[l]) all_active = false;
  if (all_active) plan.active.clear();
  return plan;
}

/// Uniform initial cells; every step is a uniform draw from the reachable box.
inline MobilePlan random_walk_path(const ScenarioParams& params, RngSeed seed) {
  validate(params);
  const GridSpec& grid = params.grid;
  Rng rng(seed, Rng::kWalkStream);
  MobilePlan plan;
  plan.travel_range_i = params.travel_range_i;
  plan.travel_range_j = params.travel_range_j;
  const auto everywhere = all_cells(grid);
  for (int l = 0; l < params.num_mobile; ++l) {
    std::vector<CellCoord> path;
    for (int k = 0; k < params.max_steps; ++k) {
      path.push_back(k == 0 ? rng.pick(everywhere)
                            : rng.pick(box_cells(grid, path.back(), params.travel_range_i,
                                                 params.travel_range_j)));
    }
    plan.trajectories.push_back(std::move(path));
  }
  return plan;
}

}  // namespace meshplan
