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

// Radio and locomotion energy estimates for plans.
//
// Mission model: every mobile node keeps its radio on for all K timesteps in
// the mobile duty cycle; static nodes run for the same mission time in their
// own duty cycle (idle by default). Locomotion is counted in abstract units,
// per_move_cost per cell change, and never folded into milliwatt-hours.

#include <cmath>
#include <stdexcept>
#include <string>

#include "meshplan/grid.hpp"

namespace meshplan {

/// Zigbee module draw at 5 V.
struct RadioPowerProfile {
  static constexpr double kVolts = 5.0;
  double tx_mw = 173.5;
  double rx_mw = 179.5;
  double idle_mw = 175.5;
  double sleep_mw = 0.5;
  double tx_ma = 34.7;
  double rx_ma = 35.9;
  double idle_ma = 35.1;
  double sleep_ma = 0.1;
};

/// True when every mode satisfies mw = ma * 5 V (to rounding).
inline bool is_consistent(const RadioPowerProfile& p, double tol = 1e-9) {
  auto ok = [&](double mw, double ma) { return std::abs(mw - ma * RadioPowerProfile::kVolts) <= tol; };
  return ok(p.tx_mw, p.tx_ma) && ok(p.rx_mw, p.rx_ma) && ok(p.idle_mw, p.idle_ma) &&
         ok(p.sleep_mw, p.sleep_ma);
}

/// Fractions of mission time spent in each radio mode.
struct DutyCycle {
  double tx = 0.0;
  double rx = 0.0;
  double idle = 1.0;
  double sleep = 0.0;

  static DutyCycle all_tx() { return {1.0, 0.0, 0.0, 0.0}; }
  static DutyCycle all_rx() { return {0.0, 1.0, 0.0, 0.0}; }
  static DutyCycle all_idle() { return {0.0, 0.0, 1.0, 0.0}; }
  static DutyCycle all_sleep() { return {0.0, 0.0, 0.0, 1.0}; }
};

inline void validate(const DutyCycle& d) {
  for (double f : {d.tx, d.rx, d.idle, d.sleep})
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("duty cycle fractions must lie in [0, 1]");
  const double sum = d.tx + d.rx + d.idle + d.sleep;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("duty cycle fractions sum to " + std::to_string(sum) + ", not 1");
}

/// Milliwatt-hours drawn by one radio over `mission_hours`.
inline double radio_energy(const RadioPowerProfile& profile, const DutyCycle& duty,
                           double mission_hours) {
  validate(duty);
  if (!(mission_hours >= 0.0)) throw std::invalid_argument("mission_hours must be >= 0");
  const double mw = profile.tx_mw * duty.tx + profile.rx_mw * duty.rx +
                    profile.idle_mw * duty.idle + profile.sleep_mw * duty.sleep;
  return mw * mission_hours;
}

struct EnergyReport {
  double radio_mwh = 0.0;         // mobile radios, N_m * K * timestep_hours
  double static_radio_mwh = 0.0;  // static radios over the same mission time
  double locomotion_units = 0.0;  // total_movements * per_move_cost
  double mission_hours = 0.0;
  DutyCycle duty_cycle;
  DutyCycle static_duty_cycle;
};

struct EnergyOptions {
  double per_move_cost = 1.0;
  double timestep_hours = 1.0;
  DutyCycle duty_cycle = DutyCycle::all_idle();
  DutyCycle static_duty_cycle = DutyCycle::all_idle();
};

inline EnergyReport plan_energy(const PlanEvaluation& eval, const RadioPowerProfile& profile,
                                const EnergyOptions& options = {}) {
  if (!(options.per_move_cost >= 0.0)) throw std::invalid_argument("per_move_cost must be >= 0");
  if (!(options.timestep_hours >= 0.0)) throw std::invalid_argument("timestep_hours must be >= 0");
  EnergyReport report;
  report.mission_hours = eval.timesteps * options.timestep_hours;
  report.duty_cycle = options.duty_cycle;
  report.static_duty_cycle = options.static_duty_cycle;
  report.radio_mwh =
      eval.mobile_nodes * radio_energy(profile, options.duty_cycle, report.mission_hours);
  report.static_radio_mwh =
      eval.static_nodes * radio_energy(profile, options.static_duty_cycle, report.mission_hours);
  report.locomotion_units = eval.total_movements * options.per_move_cost;
  return report;
}

inline EnergyReport plan_energy(const PlanEvaluation& eval, const RadioPowerProfile& profile,
                                double per_move_cost, double timestep_hours,
                                const DutyCycle& duty_cycle) {
  EnergyOptions options;
  options.per_move_cost = per_move_cost;
  options.timestep_hours = timestep_hours;
  options.duty_cycle = duty_cycle;
  return plan_energy(eval, profile, options);
}

class IncomparablePlans : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MovementSavings {
  double transitions = 0.0;  // on total_movements (cell changes)
  double visited = 0.0;      // on visited_cells (occupied node-timesteps)
};

/// Coverage and movement tallies of one plan.
struct MovementCounts {
  double covered = 0;
  double movements = 0;
  double visited = 0;
};

/// 1 - mov/cov on both movement metrics, 0 where the coverage plan has none.
/// Refuses when the movement plan covers fewer cells than the coverage plan.
inline MovementSavings movement_savings(const MovementCounts& cov, const MovementCounts& mov) {
  if (mov.covered < cov.covered)
    throw IncomparablePlans("movement_savings: movement plan covers " + std::to_string(mov.covered) +
                            " cells, coverage plan " + std::to_string(cov.covered));
  auto ratio = [](double m, double c) { return c == 0 ? 0.0 : 1.0 - m / c; };
  return {ratio(mov.movements, cov.movements), ratio(mov.visited, cov.visited)};
}

inline MovementSavings movement_savings(const PlanEvaluation& cov_eval, const PlanEvaluation& mov_eval) {
  auto counts = [](const PlanEvaluation& e) {
    return MovementCounts{static_cast<double>(e.covered_count()), static_cast<double>(e.total_movements),
                          static_cast<double>(e.visited_cells)};
  };
  return movement_savings(counts(cov_eval), counts(mov_eval));
}

}  // namespace meshplan
