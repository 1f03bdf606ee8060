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

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "meshplan/bip/model.hpp"

namespace meshplan::bip {

inline constexpr int kBruteForceMaxVars = 25;

/// Enumerates all 2^n assignments. Among co-optimal points the
/// lexicographically smallest (x0, x1, ...) wins.
inline IPSolution solve_bruteforce(const IPModel& model) {
  validate(model);
  if (model.num_vars > kBruteForceMaxVars) {
    throw std::invalid_argument("brute force refuses " + std::to_string(model.num_vars) +
                                " variables (limit " + std::to_string(kBruteForceMaxVars) + ")");
  }
  const auto start = std::chrono::steady_clock::now();
  const int n = model.num_vars;
  const bool maximize = model.sense == Sense::kMaximize;
  IPSolution result;
  std::vector<std::uint8_t> x(n, 0);
  bool found = false;
  double best = 0.0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // x0 is the most significant bit so that increasing masks walk the
    // assignments in lexicographic order.
    for (int j = 0; j < n; ++j) x[j] = static_cast<std::uint8_t>((mask >> (n - 1 - j)) & 1U);
    ++result.stats.nodes;
    if (!is_feasible(model, x)) continue;
    const double value = objective_value(model, x);
    if (!found || (maximize ? value > best : value < best)) {
      found = true;
      best = value;
      result.assignment = x;
    }
  }
  result.status = found ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  result.objective_value = found ? best : 0.0;
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace meshplan::bip
