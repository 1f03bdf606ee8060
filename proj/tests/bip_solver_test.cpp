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

#include <sstream>

#include "meshplan/bip/branch_and_bound.hpp"
#include "meshplan/bip/bruteforce.hpp"
#include "meshplan/bip/model.hpp"
#include "meshplan/bip/simplex.hpp"
#include "random_models.hpp"

namespace meshplan::bip {
namespace {

IPModel two_var_knapsack() {
  IPModel m;
  m.num_vars = 2;
  m.objective = {1, 1};
  m.add_constraint({{0, 1}, {1, 1}}, Relation::kLessEqual, 1);
  return m;
}

TEST(LpRelax, OneVariableBox) {
  IPModel m;
  m.num_vars = 1;
  m.objective = {1};
  m.add_constraint({{0, 1}}, Relation::kLessEqual, 0.5);
  const auto lp = lp_relax(m);
  ASSERT_EQ(lp.status, LpStatus::kOptimal);
  EXPECT_NEAR(lp.bound, 0.5, 1e-9);
  EXPECT_NEAR(lp.values[0], 0.5, 1e-9);
}

TEST(LpRelax, SharedCapacity) {
  const auto lp = lp_relax(two_var_knapsack());
  ASSERT_EQ(lp.status, LpStatus::kOptimal);
  EXPECT_NEAR(lp.bound, 1.0, 1e-9);
}

TEST(LpRelax, DetectsInfeasibleRelaxation) {
  IPModel m;
  m.num_vars = 2;
  m.objective = {0, 0};
  m.add_constraint({{0, 1}, {1, 1}}, Relation::kGreaterEqual, 1.5);
  m.add_constraint({{0, 1}, {1, 1}}, Relation::kLessEqual, 1.2);
  EXPECT_EQ(lp_relax(m).status, LpStatus::kInfeasible);
}

TEST(SolveExact, PicksExactlyOneOfTwo) {
  const auto sol = solve_exact(two_var_knapsack());
  ASSERT_TRUE(sol.optimal());
  EXPECT_DOUBLE_EQ(sol.objective_value, 1.0);
  EXPECT_EQ(sol.assignment[0] + sol.assignment[1], 1);
}

TEST(SolveExact, ReportsInfeasible) {
  IPModel m;
  m.num_vars = 1;
  m.objective = {1};
  m.add_constraint({{0, 1}}, Relation::kGreaterEqual, 1);
  m.add_constraint({{0, 1}}, Relation::kLessEqual, 0);
  EXPECT_EQ(solve_exact(m).status, SolveStatus::kInfeasible);
  EXPECT_EQ(solve_bruteforce(m).status, SolveStatus::kInfeasible);
}

TEST(SolveExact, FractionalRelaxationNeedsBranching) {
  // max 5a + 4b + 3c  s.t. 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c <= 8
  IPModel m;
  m.num_vars = 3;
  m.objective = {5, 4, 3};
  m.add_constraint({{0, 2}, {1, 3}, {2, 1}}, Relation::kLessEqual, 5);
  m.add_constraint({{0, 4}, {1, 1}, {2, 2}}, Relation::kLessEqual, 11);
  m.add_constraint({{0, 3}, {1, 4}, {2, 2}}, Relation::kLessEqual, 8);
  const auto exact = solve_exact(m);
  const auto brute = solve_bruteforce(m);
  ASSERT_TRUE(exact.optimal());
  EXPECT_DOUBLE_EQ(exact.objective_value, brute.objective_value);
}

TEST(SolveExact, NodeLimitKeepsIncumbentStatus) {
  auto m = testing::random_model(7, 20, 15);
  SolverConfig cfg;
  cfg.max_nodes = 1;
  const auto sol = solve_exact(m, cfg);
  EXPECT_TRUE(sol.status == SolveStatus::kNodeLimit || sol.status == SolveStatus::kOptimal ||
              sol.status == SolveStatus::kInfeasible);
}

TEST(SolveExact, RejectsBadTolerance) {
  SolverConfig cfg;
  cfg.integrality_tolerance = 1e-3;
  EXPECT_THROW(solve_exact(two_var_knapsack(), cfg), std::invalid_argument);
}

TEST(BruteForce, EmptyModel) {
  IPModel m;
  const auto sol = solve_bruteforce(m);
  ASSERT_TRUE(sol.optimal());
  EXPECT_DOUBLE_EQ(sol.objective_value, 0.0);
  EXPECT_TRUE(sol.assignment.empty());
  EXPECT_TRUE(solve_exact(m).optimal());
}

TEST(BruteForce, MinimizeUnconstrained) {
  IPModel m;
  m.num_vars = 1;
  m.sense = Sense::kMinimize;
  m.objective = {1};
  const auto sol = solve_bruteforce(m);
  ASSERT_TRUE(sol.optimal());
  EXPECT_DOUBLE_EQ(sol.objective_value, 0.0);
  EXPECT_EQ(sol.assignment[0], 0);
}

TEST(BruteForce, LexicographicTieBreak) {
  const auto sol = solve_bruteforce(two_var_knapsack());
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.assignment, (std::vector<std::uint8_t>{0, 1}));
}

TEST(BruteForce, RefusesLargeModels) {
  IPModel m;
  for (int j = 0; j < 26; ++j) m.add_var(1.0);
  EXPECT_THROW(solve_bruteforce(m), std::invalid_argument);
}

TEST(Model, ValidationCatchesBadReferences) {
  IPModel m = two_var_knapsack();
  m.add_constraint({{2, 1}}, Relation::kLessEqual, 1);
  EXPECT_THROW(validate(m), std::invalid_argument);
  IPModel dup = two_var_knapsack();
  dup.add_constraint({{0, 1}, {0, 2}}, Relation::kLessEqual, 1);
  EXPECT_THROW(validate(dup), std::invalid_argument);
}

TEST(Model, LpDump) {
  IPModel m;
  m.add_var(2.0, "a");
  m.add_var(-1.0, "b");
  m.add_constraint({{0, 1}, {1, 3}}, Relation::kLessEqual, 4, "cap");
  std::ostringstream os;
  write_lp(m, os);
  EXPECT_EQ(os.str(), "Maximize\n obj: 2 a - b\nSubject To\n cap: a + 3 b <= 4\nBinary\n a b\nEnd\n");
}

// Random models: exact search agrees with enumeration, sits under the LP
// bound, re-verifies exactly and is reproducible.
class RandomModels : public ::testing::TestWithParam<int> {};

TEST_P(RandomModels, MatchesBruteForce) {
  const auto model = testing::random_model(1000 + GetParam());
  const auto brute = solve_bruteforce(model);
  const auto exact = solve_exact(model);
  ASSERT_EQ(exact.status == SolveStatus::kInfeasible, brute.status == SolveStatus::kInfeasible);
  if (!brute.optimal()) return;
  ASSERT_TRUE(exact.optimal());
  EXPECT_DOUBLE_EQ(exact.objective_value, brute.objective_value);
  EXPECT_TRUE(is_feasible(model, exact.assignment));
  EXPECT_DOUBLE_EQ(objective_value(model, exact.assignment), exact.objective_value);

  const auto lp = lp_relax(model);
  ASSERT_EQ(lp.status, LpStatus::kOptimal);
  if (model.sense == Sense::kMaximize) {
    EXPECT_GE(lp.bound + 1e-7, exact.objective_value);
  } else {
    EXPECT_LE(lp.bound - 1e-7, exact.objective_value);
  }

  const auto again = solve_exact(model);
  EXPECT_EQ(again.assignment, exact.assignment);
  EXPECT_EQ(again.stats.nodes, exact.stats.nodes);
}

TEST_P(RandomModels, ExtraConstraintNeverHelps) {
  auto model = testing::random_model(5000 + GetParam());
  const auto base = solve_exact(model);
  auto extra = testing::random_model(9000 + GetParam(), model.num_vars, 1);
  for (auto& row : extra.constraints) {
    for (auto& t : row.terms) t.var %= model.num_vars;
    std::sort(row.terms.begin(), row.terms.end(), [](auto a, auto b) { return a.var < b.var; });
    row.terms.erase(std::unique(row.terms.begin(), row.terms.end(),
                                [](auto a, auto b) { return a.var == b.var; }),
                    row.terms.end());
    model.constraints.push_back(row);
  }
  const auto restricted = solve_exact(model);
  if (!base.optimal()) {
    EXPECT_FALSE(restricted.optimal());
    return;
  }
  if (!restricted.optimal()) return;
  if (model.sense == Sense::kMaximize) {
    EXPECT_LE(restricted.objective_value, base.objective_value);
  } else {
    EXPECT_GE(restricted.objective_value, base.objective_value);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomModels, ::testing::Range(0, 150));

}  // namespace
}  // namespace meshplan::bip
