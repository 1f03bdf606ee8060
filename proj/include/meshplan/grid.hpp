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

// Grid geometry shared by every planner: cells, sensing neighborhoods,
// boundary designation and plan evaluation. Coordinates are 1-based on every
// public surface; dense per-cell storage is 0-based row-major internally.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace meshplan {

/// Raised when a plan violates a structural invariant (bounds, travel range).
class InvalidPlan : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-negative rational number, used for the boundary bonus weight so that
/// integer-scaled objectives stay exact.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend constexpr bool operator==(const Rational&, const Rational&) = default;
};

inline Rational reduced(Rational r) {
  if (r.den == 0) throw std::invalid_argument("rational with zero denominator");
  if (r.den < 0) { r.num = -r.num; r.den = -r.den; }
  const std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
  if (g > 1) { r.num /= g; r.den /= g; }
  return r;
}

/// Parses "3/4", "0.5" or "2". Decimals are converted exactly (0.125 -> 1/8).
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return reduced({std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))});
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return {std::stoll(text), 1};
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 12) throw std::invalid_argument("too many decimals in '" + text + "'");
  std::int64_t den = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  const std::string whole = text.substr(0, dot);
  const bool negative = !whole.empty() && whole[0] == '-';
  const std::int64_t int_part = (whole.empty() || whole == "-") ? 0 : std::stoll(whole);
  const std::int64_t frac_part = frac.empty() ? 0 : std::stoll(frac);
  const std::int64_t magnitude = (int_part < 0 ? -int_part : int_part) * den + frac_part;
  return reduced({negative ? -magnitude : magnitude, den});
}

struct CellCoord {
  int i = 1;  // row, 1..rows
  int j = 1;  // column, 1..cols

  friend constexpr auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CellCoord& c) {
  return os << '(' << c.i << ',' << c.j << ')';
}

using CellSet = std::set<CellCoord>;

struct GridSpec {
  int rows = 7;
  int cols = 7;
  int sensing_radius = 1;
  Rational boundary_weight{1, 2};

  int cell_count() const { return rows * cols; }
  bool contains(CellCoord c) const { return c.i >= 1 && c.i <= rows && c.j >= 1 && c.j <= cols; }
  int index_of(CellCoord c) const { return (c.i - 1) * cols + (c.j - 1); }
  CellCoord cell_at(int index) const { return {index / cols + 1, index % cols + 1}; }
  bool is_boundary(CellCoord c) const {
    return c.i == 1 || c.i == rows || c.j == 1 || c.j == cols;
  }
};

inline void validate(const GridSpec& grid) {
  if (grid.rows < 1 || grid.cols < 1) {
    throw std::invalid_argument("grid must have at least one row and one column");
  }
  if (grid.sensing_radius < 0) throw std::invalid_argument("sensing radius must be non-negative");
  if (grid.boundary_weight.den <= 0 || grid.boundary_weight.num < 0) {
    throw std::invalid_argument("boundary weight must be a non-negative rational");
  }
}

inline std::vector<CellCoord> all_cells(const GridSpec& grid) {
  std::vector<CellCoord> cells;
  cells.reserve(static_cast<std::size_t>(grid.cell_count()));
  for (int i = 1; i <= grid.rows; ++i)
    for (int j = 1; j <= grid.cols; ++j) cells.push_back({i, j});
  return cells;
}

/// In-bounds cells of the (2*radius_i+1) x (2*radius_j+1) box around `center`,
/// clipped at the grid edge, in row-major order.
inline std::vector<CellCoord> box_cells(const GridSpec& grid, CellCoord center, int radius_i,
                                        int radius_j) {
  std::vector<CellCoord> out;
  const int i0 = std::max(1, center.i - radius_i), i1 = std::min(grid.rows, center.i + radius_i);
  const int j0 = std::max(1, center.j - radius_j), j1 = std::min(grid.cols, center.j + radius_j);
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) out.push_back({i, j});
  return out;
}

/// Chebyshev square of `radius` around `center`, clipped at the grid edges.
inline CellSet neighborhood(const GridSpec& grid, CellCoord center, int radius) {
  if (!grid.contains(center)) {
    std::ostringstream msg;
    msg << "neighborhood center " << center << " outside " << grid.rows << "x" << grid.cols
        << " grid";
    throw std::invalid_argument(msg.str());
  }
  if (radius < 0) throw std::invalid_argument("neighborhood radius must be non-negative");
  const auto cells = box_cells(grid, center, radius, radius);
  return {cells.begin(), cells.end()};
}

inline CellSet boundary_cells(const GridSpec& grid) {
  CellSet out;
  for (const auto& c : all_cells(grid))
    if (grid.is_boundary(c)) out.insert(c);
  return out;
}

struct StaticPlan {
  std::vector<CellCoord> positions;
};

/// Per-node trajectories, one position per timestep. `active` is either empty
/// (every step active) or has the same shape as `trajectories`; an inactive
/// step is a halted node that senses nothing and does not move.
struct MobilePlan {
  std::vector<std::vector<CellCoord>> trajectories;
  int travel_range_i = 0;
  int travel_range_j = 0;
  std::vector<std::vector<bool>> active;

  int num_nodes() const { return static_cast<int>(trajectories.size()); }
  int num_steps() const {
    return trajectories.empty() ? 0 : static_cast<int>(trajectories.front().size());
  }
  bool is_active(std::size_t node, std::size_t step) const {
    return active.empty() || active[node][step];
  }
};

struct PlanEvaluation {
  CellSet covered_cells;
  CellSet uncovered_cells;
  double coverage_ratio = 0.0;
  // static hits on every cell plus mobile sensing events on cells the static
  // layer leaves uncovered
  std::map<CellCoord, int> overlap_histogram;
  std::map<CellCoord, int> static_overlap;
  std::map<CellCoord, int> mobile_overlap;
  int total_movements = 0;
  int visited_cells = 0;  // active (node, timestep) pairs
  int static_nodes = 0;
  int mobile_nodes = 0;
  int timesteps = 0;

  int covered_count() const { return static_cast<int>(covered_cells.size()); }
};

inline void validate(const GridSpec& grid, const StaticPlan& plan) {
  for (std::size_t s = 0; s < plan.positions.size(); ++s) {
    if (!grid.contains(plan.positions[s])) {
      std::ostringstream msg;
      msg << "static node " << s + 1 << " at " << plan.positions[s] << " is outside the grid";
      throw InvalidPlan(msg.str());
    }
  }
}

inline void validate(const GridSpec& grid, const MobilePlan& plan) {
  if (plan.travel_range_i < 0 || plan.travel_range_j < 0) {
    throw InvalidPlan("travel range must be non-negative");
  }
  const auto steps = static_cast<std::size_t>(plan.num_steps());
  if (!plan.active.empty() && plan.active.size() != plan.trajectories.size()) {
    throw InvalidPlan("activity mask does not match trajectory count");
  }
  for (std::size_t l = 0; l < plan.trajectories.size(); ++l) {
    const auto& path = plan.trajectories[l];
    if (path.size() != steps) throw InvalidPlan("trajectories must share one horizon length");
    if (!plan.active.empty() && plan.active[l].size() != steps) {
      throw InvalidPlan("activity mask does not match the horizon length");
    }
    const CellCoord* previous = nullptr;
    for (std::size_t k = 0; k < steps; ++k) {
      if (!plan.is_active(l, k)) continue;
      if (!grid.contains(path[k])) {
        std::ostringstream msg;
        msg << "mobile node " << l + 1 << " at timestep " << k + 1 << " is outside the grid "
            << path[k];
        throw InvalidPlan(msg.str());
      }
      if (previous != nullptr) {
        const int di = path[k].i - previous->i, dj = path[k].j - previous->j;
        if (std::abs(di) > plan.travel_range_i || std::abs(dj) > plan.travel_range_j) {
          std::ostringstream msg;
          msg << "mobile node " << l + 1 << " violates travel range at timestep " << k + 1
              << ": delta (" << di << ',' << dj << ") exceeds (" << plan.travel_range_i << ','
              << plan.travel_range_j << ')';
          throw InvalidPlan(msg.str());
        }
      }
      previous = &path[k];
    }
  }
}

namespace detail {

inline std::vector<int> static_hits(const GridSpec& grid, const StaticPlan& plan) {
  std::vector<int> hits(static_cast<std::size_t>(grid.cell_count()), 0);
  const int r = grid.sensing_radius;
  for (const auto& p : plan.positions)
    for (const auto& c : box_cells(grid, p, r, r)) ++hits[grid.index_of(c)];
  return hits;
}

}  // namespace detail

inline PlanEvaluation static_coverage(const GridSpec& grid, const StaticPlan& plan) {
  validate(grid);
  validate(grid, plan);
  const auto hits = detail::static_hits(grid, plan);
  PlanEvaluation eval;
  for (int idx = 0; idx < grid.cell_count(); ++idx) {
    const CellCoord c = grid.cell_at(idx);
    if (hits[idx] > 0) {
      eval.covered_cells.insert(c);
      eval.static_overlap[c] = hits[idx];
      eval.overlap_histogram[c] = hits[idx];
    } else {
      eval.uncovered_cells.insert(c);
    }
  }
  eval.coverage_ratio = static_cast<double>(eval.covered_cells.size()) / grid.cell_count();
  eval.static_nodes = static_cast<int>(plan.positions.size());
  return eval;
}

inline CellSet uncovered_after_static(const GridSpec& grid, const StaticPlan& plan) {
  return static_coverage(grid, plan).uncovered_cells;
}

/// Counts between-timestep cell changes over consecutive active steps.
inline int count_movements(const MobilePlan& plan) {
  int moves = 0;
  for (std::size_t l = 0; l < plan.trajectories.size(); ++l) {
    const CellCoord* previous = nullptr;
    for (std::size_t k = 0; k < plan.trajectories[l].size(); ++k) {
      if (!plan.is_active(l, k)) continue;
      if (previous != nullptr && *previous != plan.trajectories[l][k]) ++moves;
      previous = &plan.trajectories[l][k];
    }
  }
  return moves;
}

inline PlanEvaluation evaluate_combined(const GridSpec& grid, const StaticPlan& static_plan,
                                        const MobilePlan& mobile_plan) {
  validate(grid);
  validate(grid, static_plan);
  validate(grid, mobile_plan);
  const auto shits = detail::static_hits(grid, static_plan);
  std::vector<int> mhits(shits.size(), 0);
  const int r = grid.sensing_radius;
  int visited = 0;
  for (std::size_t l = 0; l < mobile_plan.trajectories.size(); ++l) {
    for (std::size_t k = 0; k < mobile_plan.trajectories[l].size(); ++k) {
      if (!mobile_plan.is_active(l, k)) continue;
      ++visited;
      for (const auto& c : box_cells(grid, mobile_plan.trajectories[l][k], r, r))
        ++mhits[grid.index_of(c)];
    }
  }
  PlanEvaluation eval;
  for (int idx = 0; idx < grid.cell_count(); ++idx) {
    const CellCoord c = grid.cell_at(idx);
    if (shits[idx] > 0) {
      eval.static_overlap[c] = shits[idx];
      eval.overlap_histogram[c] = shits[idx];
    } else if (mhits[idx] > 0) {
      eval.mobile_overlap[c] = mhits[idx];
      eval.overlap_histogram[c] = mhits[idx];
    }
    if (shits[idx] > 0 || mhits[idx] > 0) {
      eval.covered_cells.insert(c);
    } else {
      eval.uncovered_cells.insert(c);
    }
  }
  eval.coverage_ratio = static_cast<double>(eval.covered_cells.size()) / grid.cell_count();
  eval.total_movements = count_movements(mobile_plan);
  eval.visited_cells = visited;
  eval.static_nodes = static_cast<int>(static_plan.positions.size());
  eval.mobile_nodes = mobile_plan.num_nodes();
  eval.timesteps = mobile_plan.num_steps();
  return eval;
}

}  // namespace meshplan
