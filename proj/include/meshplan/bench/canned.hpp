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

// Built-in sweeps. All run on the 7x7 grid with r_s = 1, alpha = 1/2 and
// both overlap limits at 2. configs/*.json hold the same documents.

#include "meshplan/bench/config.hpp"

namespace meshplan::bench {

/// Random and exact static placement, each followed by MILP-Cov, K = 2.
inline ScenarioConfig table2_config() {
  ScenarioConfig c;
  c.name = "table2";
  c.base.max_steps = 2;
  c.sweeps = {{.num_static = {1, 2}, .num_mobile = {1, 2, 3}}};
  c.strategies = {{StaticStrategy::kRandom, MobileStrategy::kMilpCov},
                  {StaticStrategy::kMilp, MobileStrategy::kMilpCov}};
  // Some random placements with three mobile nodes take minutes to prove; a
  // node cap keeps the run short and, unlike a time limit, reproducible.
  c.node_limits[{StaticStrategy::kRandom, MobileStrategy::kMilpCov}] = 100;
  c.seeds = seed_range(20);
  return c;
}

/// Travel range sweep for N_s = 1, N_m = 2, plus a longer horizon at rho = 5.
inline ScenarioConfig table3_config() {
  ScenarioConfig c;
  c.name = "table3";
  c.base.num_static = 1;
  c.base.num_mobile = 2;
  c.base.max_steps = 2;
  c.sweeps = {{.travel_range = {1, 2, 3, 4, 5}}, {.max_steps = {3}, .travel_range = {5}}};
  c.strategies = {{StaticStrategy::kMilp, MobileStrategy::kMilpCov}};
  return c;
}

/// Movement-minimizing plans for full coverage as node counts grow. A single
/// static node is left out: with N_m <= 2 full coverage is either out of
/// reach or very slow to settle.
inline ScenarioConfig fig4_config() {
  ScenarioConfig c;
  c.name = "fig4";
  c.base.max_steps = 4;
  c.base.coverage_ratio = 1.0;
  c.sweeps = {{.num_static = {2, 3, 4}, .num_mobile = {2, 3}}};
  c.strategies = {{StaticStrategy::kMilp, MobileStrategy::kMilpMov}};
  return c;
}

/// MILP-Mov asked for exactly the coverage MILP-Cov reaches, on the table2
/// node counts and a few horizons.
inline ScenarioConfig savings_config() {
  ScenarioConfig c;
  c.name = "savings";
  c.base.coverage_ratio = std::nullopt;
  c.sweeps = {{.num_static = {1, 2}, .num_mobile = {1, 2, 3}, .max_steps = {2, 3, 4}}};
  c.strategies = {{StaticStrategy::kMilp, MobileStrategy::kMilpCov},
                  {StaticStrategy::kMilp, MobileStrategy::kMilpMov}};
  return c;
}

}  // namespace meshplan::bench
