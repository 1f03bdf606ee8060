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

// Human-readable comparison of result rows: per-configuration ranking,
// coverage deltas, movement savings and monotonicity checks.

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshplan/bench/csv.hpp"
#include "meshplan/bench/run.hpp"
#include "meshplan/energy.hpp"

namespace meshplan::bench {

struct ReportOptions {
  RadioPowerProfile profile;
  EnergyOptions energy;
};

namespace detail {

// A configuration ignores the coverage-ratio axis, which only steers milp-mov.
inline AxisPoint configuration_of(const AxisPoint& p) {
  AxisPoint q = p;
  q.coverage_ratio = 1.0;
  return q;
}

struct Entry {
  StrategyPair strategy;
  std::optional<double> ratio;  // coverage ratio axis, kept for labels
  const ResultRow* row = nullptr;

  std::string label() const {
    std::string s = strategy.label();
    if (strategy.mobile_strategy == MobileStrategy::kMilpMov)
      s += ratio ? "(cr=" + fixed(*ratio, 4) + ")" : "(cr=cov)";
    return s;
  }
  bool trusted() const {
    return row->status == "optimal" || row->status == "heuristic" || row->status.empty();
  }
  MovementCounts counts() const { return {row->covered_cells, row->total_movements, row->visited_cells}; }
};

inline std::string describe(const AxisPoint& p) {
  std::ostringstream os;
  os << p.rows << 'x' << p.cols << " r_s=" << p.sensing_radius << " alpha=" << rational_text(p.boundary_weight)
     << " N_s=" << p.num_static << " N_m=" << p.num_mobile << " K=" << p.max_steps << " rho=(" << p.travel_range_i
     << ',' << p.travel_range_j << ") overlap=(" << p.static_overlap_limit << ',' << p.mobile_overlap_limit << ')';
  return os.str();
}

inline std::string pct(double fraction) { return fixed(100.0 * fraction, 1) + "%"; }

}  // namespace detail

/// Throws std::invalid_argument unless the rows hold at least two strategies.
inline std::string compare_report(const std::vector<ResultRow>& rows, const ReportOptions& options = {}) {
  using detail::Entry;
  std::set<std::string> labels;
  for (const auto& r : rows) {
    Entry e{r.strategy, r.point.coverage_ratio, &r};
    labels.insert(e.label());
  }
  if (labels.size() < 2)
    throw std::invalid_argument("compare needs rows from at least two strategies, found " +
                                std::to_string(labels.size()));

  // representative row per (configuration, strategy): mean for random pairs
  std::map<AxisPoint, std::vector<Entry>> groups;
  for (const auto& r : rows) {
    const bool representative = r.strategy.stochastic() ? r.kind == RowKind::kMean : r.kind == RowKind::kRun;
    if (representative) groups[detail::configuration_of(r.point)].push_back({r.strategy, r.point.coverage_ratio, &r});
  }

  std::ostringstream out;
  std::vector<std::string> warnings;
  out << "meshplan comparison report\n";
  out << "energy model: mobile radios on for N_m*K timesteps of " << detail::fixed(options.energy.timestep_hours, 2)
      << " h each (tx/rx/idle/sleep " << detail::fixed(options.energy.duty_cycle.tx, 2) << '/'
      << detail::fixed(options.energy.duty_cycle.rx, 2) << '/' << detail::fixed(options.energy.duty_cycle.idle, 2)
      << '/' << detail::fixed(options.energy.duty_cycle.sleep, 2) << "); locomotion "
      << detail::fixed(options.energy.per_move_cost, 2) << " unit per cell change\n";
  out << "random strategies are summarized by their mean row\n";

  for (auto& [config, entries] : groups) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.row->covered_cells != b.row->covered_cells) return a.row->covered_cells > b.row->covered_cells;
      if (a.row->visited_cells != b.row->visited_cells) return a.row->visited_cells < b.row->visited_cells;
      return a.label() < b.label();
    });
    const double cells = config.rows * config.cols;
    const double mission_h = config.max_steps * options.energy.timestep_hours;
    out << '\n' << detail::describe(config) << '\n';
    out << "  mobile radio energy " << detail::fixed(config.num_mobile * radio_energy(options.profile, options.energy.duty_cycle, mission_h), 1)
        << " mWh\n";
    const double best = entries.front().row->covered_cells;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& e = entries[k];
      out << "  " << k + 1 << ". " << e.label() << "  coverage " << detail::fixed(100.0 * e.row->covered_cells / cells, 2)
          << "% (" << detail::metric(*e.row, e.row->covered_cells) << " cells, "
          << detail::fixed(100.0 * (e.row->covered_cells - best) / cells, 2) << " pp)"
          << "  movements " << detail::metric(*e.row, e.row->total_movements) << "  visited "
          << detail::metric(*e.row, e.row->visited_cells) << "  locomotion "
          << detail::fixed(e.row->total_movements * options.energy.per_move_cost, 1);
      if (!e.trusted()) out << "  [" << e.row->status << "]";
      out << '\n';
    }

    auto find = [&](StaticStrategy s, MobileStrategy m) -> const Entry* {
      for (const auto& e : entries)
        if (e.strategy.static_strategy == s && e.strategy.mobile_strategy == m) return &e;
      return nullptr;
    };
    for (auto s : {StaticStrategy::kMilp, StaticStrategy::kRandom}) {
      const Entry* cov = find(s, MobileStrategy::kMilpCov);
      const Entry* greedy = find(s, MobileStrategy::kGreedy);
      const Entry* walk = find(s, MobileStrategy::kRandom);
      for (const auto& mov : entries) {
        if (!cov || mov.strategy != StrategyPair{s, MobileStrategy::kMilpMov}) continue;
        try {
          const auto sv = movement_savings(cov->counts(), mov.counts());
          out << "  savings " << mov.label() << " vs " << cov->label() << ": transitions " << detail::pct(sv.transitions)
              << ", visited cells " << detail::pct(sv.visited) << '\n';
        } catch (const IncomparablePlans&) {
          out << "  savings " << mov.label() << " vs " << cov->label() << ": refused, lower coverage\n";
        }
      }
      const auto where = detail::describe(config);
      if (cov && greedy && cov->trusted() && cov->row->covered_cells < greedy->row->covered_cells)
        warnings.push_back(where + ": " + cov->label() + " covers less than " + greedy->label());
      if (greedy && walk && greedy->row->covered_cells < walk->row->covered_cells)
        warnings.push_back(where + ": " + greedy->label() + " covers less than " + walk->label() + " on average");
    }
    for (auto m : {MobileStrategy::kMilpCov, MobileStrategy::kGreedy, MobileStrategy::kRandom}) {
      const Entry* milp = find(StaticStrategy::kMilp, m);
      const Entry* random = find(StaticStrategy::kRandom, m);
      if (milp && random && milp->trusted() && milp->row->covered_cells < random->row->covered_cells)
        warnings.push_back(detail::describe(config) + ": " + milp->label() + " covers less than " + random->label() +
                           " on average");
    }
  }

  // Across configurations: exact coverage never drops with more range or
  // horizon; exact movement never grows with more nodes.
  auto same_except = [](const AxisPoint& a, const AxisPoint& b, auto tweak) {
    AxisPoint x = a;
    tweak(x, b);
    return x == b;
  };
  for (const auto& [ca, ea] : groups) {
    for (const auto& [cb, eb] : groups) {
      for (const auto& a : ea) {
        for (const auto& b : eb) {
          if (a.strategy != b.strategy || !a.trusted() || !b.trusted() || a.ratio != b.ratio) continue;
          const bool exact_static = a.strategy.static_strategy == StaticStrategy::kMilp;
          if (!exact_static) continue;
          if (a.strategy.mobile_strategy == MobileStrategy::kMilpCov) {
            const bool more_reach =
                same_except(ca, cb, [](AxisPoint& x, const AxisPoint& y) {
                  x.travel_range_i = y.travel_range_i;
                  x.travel_range_j = y.travel_range_j;
                  x.max_steps = y.max_steps;
                }) &&
                cb.travel_range_i >= ca.travel_range_i && cb.travel_range_j >= ca.travel_range_j &&
                cb.max_steps >= ca.max_steps && !(ca == cb);
            if (more_reach && b.row->covered_cells < a.row->covered_cells)
              warnings.push_back(a.label() + ": coverage drops from " + detail::describe(ca) + " to " +
                                 detail::describe(cb));
          }
          if (a.strategy.mobile_strategy == MobileStrategy::kMilpMov && a.ratio && ca.num_mobile > 0) {
            const bool more_nodes =
                same_except(ca, cb, [](AxisPoint& x, const AxisPoint& y) {
                  x.num_static = y.num_static;
                  x.num_mobile = y.num_mobile;
                }) &&
                cb.num_static >= ca.num_static && cb.num_mobile >= ca.num_mobile && !(ca == cb);
            if (more_nodes && b.row->visited_cells > a.row->visited_cells)
              warnings.push_back(a.label() + ": visited cells grow from " + detail::describe(ca) + " to " +
                                 detail::describe(cb));
          }
        }
      }
    }
  }

  out << '\n';
  if (warnings.empty()) {
    out << "monotonicity checks: zero violations\n";
  } else {
    out << "monotonicity checks: " << warnings.size() << " violation" << (warnings.size() == 1 ? "" : "s") << '\n';
    for (const auto& w : warnings) out << "  warning: " << w << '\n';
  }
  return out.str();
}

}  // namespace meshplan::bench
