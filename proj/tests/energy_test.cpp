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

#include <gtest/gtest.h>

#include "meshplan/energy.hpp"

namespace meshplan {
namespace {

TEST(RadioPowerProfile, PowerIsCurrentTimesFiveVolts) {
  const RadioPowerProfile p;
  EXPECT_TRUE(is_consistent(p));
  EXPECT_NEAR(p.tx_mw, p.tx_ma * 5, 1e-9);
  EXPECT_NEAR(p.rx_mw, p.rx_ma * 5, 1e-9);
  EXPECT_NEAR(p.idle_mw, p.idle_ma * 5, 1e-9);
  EXPECT_NEAR(p.sleep_mw, p.sleep_ma * 5, 1e-9);
  EXPECT_LT(p.sleep_mw * 100, p.idle_mw);
  RadioPowerProfile bad;
  bad.rx_ma = 30;
  EXPECT_FALSE(is_consistent(bad));
}

TEST(RadioEnergy, Examples) {
  const RadioPowerProfile p;
  EXPECT_NEAR(radio_energy(p, DutyCycle::all_sleep(), 1.0), 0.5, 1e-12);
  EXPECT_NEAR(radio_energy(p, DutyCycle::all_tx(), 2.0), 347.0, 1e-9);
  EXPECT_EQ(radio_energy(p, DutyCycle::all_rx(), 0.0), 0.0);
  EXPECT_NEAR(radio_energy(p, {0.25, 0.25, 0.25, 0.25}, 4.0), 173.5 + 179.5 + 175.5 + 0.5, 1e-9);
}

TEST(RadioEnergy, RejectsBadInput) {
  const RadioPowerProfile p;
  EXPECT_THROW(radio_energy(p, {0.5, 0.0, 0.0, 0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(radio_energy(p, {1.5, -0.5, 0.0, 0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(radio_energy(p, DutyCycle::all_idle(), -1.0), std::invalid_argument);
}

TEST(RadioEnergy, LinearInHoursAndFractions) {
  const RadioPowerProfile p;
  const DutyCycle a{0.1, 0.2, 0.3, 0.4}, b{0.7, 0.0, 0.0, 0.3};
  for (double h : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(radio_energy(p, a, 2 * h), 2 * radio_energy(p, a, h), 1e-9);
    const DutyCycle mix{(a.tx + b.tx) / 2, (a.rx + b.rx) / 2, (a.idle + b.idle) / 2,
                        (a.sleep + b.sleep) / 2};
    EXPECT_NEAR(radio_energy(p, mix, h), (radio_energy(p, a, h) + radio_energy(p, b, h)) / 2, 1e-9);
  }
}

PlanEvaluation evaluation(int covered, int movements, int visited, int ns = 1, int nm = 2, int k = 3) {
  PlanEvaluation e;
  for (int c = 0; c < covered; ++c) e.covered_cells.insert({1 + c / 7, 1 + c % 7});
  e.total_movements = movements;
  e.visited_cells = visited;
  e.static_nodes = ns;
  e.mobile_nodes = nm;
  e.timesteps = k;
  return e;
}

TEST(PlanEnergy, MissionTimeAndLocomotion) {
  const RadioPowerProfile p;
  const auto r = plan_energy(evaluation(30, 4, 6), p, 1.0, 0.5, DutyCycle::all_tx());
  EXPECT_NEAR(r.mission_hours, 1.5, 1e-12);
  EXPECT_NEAR(r.radio_mwh, 2 * 173.5 * 1.5, 1e-9);  // N_m * K * timestep hours
  EXPECT_NEAR(r.static_radio_mwh, 175.5 * 1.5, 1e-9);
  EXPECT_EQ(r.locomotion_units, 4.0);
}

TEST(PlanEnergy, ZeroMovementsAndZeroCost) {
  const RadioPowerProfile p;
  EXPECT_EQ(plan_energy(evaluation(30, 0, 6), p).locomotion_units, 0.0);
  const auto r = plan_energy(evaluation(30, 5, 6), p, 0.0, 1.0, DutyCycle::all_idle());
  EXPECT_EQ(r.locomotion_units, 0.0);
  EXPECT_NEAR(r.radio_mwh, radio_energy(p, DutyCycle::all_idle(), 3.0) * 2, 1e-9);
  EXPECT_THROW(plan_energy(evaluation(30, 5, 6), p, -1.0, 1.0, DutyCycle::all_idle()),
               std::invalid_argument);
}

TEST(MovementSavings, Examples) {
  const auto cov = evaluation(40, 4, 6);
  EXPECT_EQ(movement_savings(cov, cov).transitions, 0.0);
  EXPECT_EQ(movement_savings(cov, cov).visited, 0.0);
  const auto halted = evaluation(40, 0, 2);
  EXPECT_EQ(movement_savings(cov, halted).transitions, 1.0);
  EXPECT_NEAR(movement_savings(cov, halted).visited, 1.0 - 2.0 / 6.0, 1e-12);
  EXPECT_EQ(movement_savings(evaluation(40, 0, 0), evaluation(41, 0, 0)).transitions, 0.0);
}

TEST(MovementSavings, RefusesLowerCoverage) {
  EXPECT_THROW(movement_savings(evaluation(40, 4, 6), evaluation(39, 0, 1)), IncomparablePlans);
}

}  // namespace
}  // namespace meshplan
