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

#include <algorithm>
#include <random>

#include "meshplan/grid.hpp"

namespace meshplan {
namespace {

GridSpec grid_of(int rows, int cols, int radius = 1) {
  GridSpec g;
  g.rows = rows;
  g.cols = cols;
  g.sensing_radius = radius;
  return g;
}

TEST(Neighborhood, InteriorSquareCoversSmallGrid) {
  const auto g = grid_of(3, 3);
  EXPECT_EQ(neighborhood(g, {2, 2}, 1).size(), 9u);
}

TEST(Neighborhood, CornerIsClipped) {
  const CellSet expected{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  EXPECT_EQ(neighborhood(grid_of(7, 7), {1, 1}, 1), expected);
}

TEST(Neighborhood, ZeroRadiusIsTheCell) {
  EXPECT_EQ(neighborhood(grid_of(7, 7), {4, 4}, 0), (CellSet{{4, 4}}));
}

TEST(Neighborhood, RejectsOffGridCenter) {
  const auto g = grid_of(7, 7);
  EXPECT_THROW(neighborhood(g, {0, 3}, 1), std::invalid_argument);
  EXPECT_THROW(neighborhood(g, {3, 8}, 1), std::invalid_argument);
  EXPECT_THROW(neighborhood(g, {3, 3}, -1), std::invalid_argument);
}

TEST(Neighborhood, SymmetricAndBounded) {
  for (int rows : {1, 2, 5, 7})
    for (int cols : {1, 3, 7})
      for (int r : {0, 1, 2}) {
        const auto g = grid_of(rows, cols, r);
        for (const auto& a : all_cells(g)) {
          const auto na = neighborhood(g, a, r);
          const bool interior = a.i - r >= 1 && a.i + r <= rows && a.j - r >= 1 && a.j + r <= cols;
          const auto full = static_cast<std::size_t>((2 * r + 1) * (2 * r + 1));
          EXPECT_LE(na.size(), full);
          EXPECT_EQ(na.size() == full, interior) << a;
          for (const auto& b : all_cells(g))
            EXPECT_EQ(na.count(b) == 1, neighborhood(g, b, r).count(a) == 1);
        }
      }
}

TEST(BoundaryCells, Counts) {
  EXPECT_EQ(boundary_cells(grid_of(7, 7)).size(), 24u);
  EXPECT_EQ(boundary_cells(grid_of(1, 5)).size(), 5u);
  EXPECT_EQ(boundary_cells(grid_of(2, 2)).size(), 4u);
  for (int rows = 2; rows <= 6; ++rows)
    for (int cols = 2; cols <= 6; ++cols)
      EXPECT_EQ(boundary_cells(grid_of(rows, cols)).size(),
                static_cast<std::size_t>(2 * rows + 2 * cols - 4));
}

TEST(GridSpec, RejectsDegenerate) {
  EXPECT_THROW(validate(grid_of(0, 3)), std::invalid_argument);
  EXPECT_THROW(validate(grid_of(3, 3, -1)), std::invalid_argument);
  auto g = grid_of(3, 3);
  g.boundary_weight = {-1, 2};
  EXPECT_THROW(validate(g), std::invalid_argument);
}

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("1/2"), (Rational{1, 2}));
  EXPECT_EQ(parse_rational("6/8"), (Rational{3, 4}));
  EXPECT_EQ(parse_rational("0.125"), (Rational{1, 8}));
  EXPECT_EQ(parse_rational("2"), (Rational{2, 1}));
  EXPECT_EQ(parse_rational("1.5"), (Rational{3, 2}));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(StaticCoverage, SingleCenterNode) {
  const auto eval = static_coverage(grid_of(7, 7), {{{4, 4}}});
  EXPECT_EQ(eval.covered_count(), 9);
  EXPECT_NEAR(eval.coverage_ratio, 9.0 / 49.0, 1e-15);
  EXPECT_EQ(eval.total_movements, 0);
  EXPECT_EQ(uncovered_after_static(grid_of(7, 7), {{{4, 4}}}).size(), 40u);
}

TEST(StaticCoverage, TwoOverlappingNodes) {
  const auto g = grid_of(7, 7);
  const StaticPlan plan{{{2, 2}, {2, 4}}};
  const auto eval = static_coverage(g, plan);
  // rows 1..3 x columns 1..5; column 3 is seen twice
  EXPECT_EQ(eval.covered_count(), 15);
  EXPECT_EQ(eval.uncovered_cells.size(), 34u);
  int doubles = 0;
  for (const auto& [cell, count] : eval.overlap_histogram) {
    if (count == 2) {
      ++doubles;
      EXPECT_EQ(cell.j, 3);
    }
  }
  EXPECT_EQ(doubles, 3);
  EXPECT_EQ(uncovered_after_static(g, plan), eval.uncovered_cells);
}

TEST(StaticCoverage, FullSmallGrid) {
  const auto g = grid_of(3, 3);
  EXPECT_DOUBLE_EQ(static_coverage(g, {{{2, 2}}}).coverage_ratio, 1.0);
  EXPECT_TRUE(uncovered_after_static(g, {{{2, 2}}}).empty());
}

TEST(StaticCoverage, DuplicatePositionsAreLegal) {
  const auto eval = static_coverage(grid_of(7, 7), {{{4, 4}, {4, 4}}});
  EXPECT_EQ(eval.covered_count(), 9);
  EXPECT_EQ(eval.overlap_histogram.at({4, 4}), 2);
}

TEST(StaticCoverage, RejectsOffGridNode) {
  EXPECT_THROW(static_coverage(grid_of(7, 7), {{{8, 1}}}), InvalidPlan);
}

MobilePlan lattice_mobile_plan() {
  MobilePlan m;
  m.travel_range_i = 2;
  m.travel_range_j = 2;
  m.trajectories = {{{4, 2}, {4, 4}, {4, 6}}, {{6, 2}, {6, 4}, {6, 6}}};
  return m;
}

TEST(EvaluateCombined, ThreeStaticTwoMobileCoverEverything) {
  const auto g = grid_of(7, 7);
  const StaticPlan s{{{2, 2}, {2, 4}, {2, 6}}};
  const auto eval = evaluate_combined(g, s, lattice_mobile_plan());
  EXPECT_EQ(eval.covered_count(), 49);
  EXPECT_TRUE(eval.uncovered_cells.empty());
  EXPECT_EQ(eval.total_movements, 4);
  EXPECT_EQ(eval.visited_cells, 6);
}

TEST(EvaluateCombined, StaticCoversAllSoMobileAddsNothing) {
  const auto g = grid_of(3, 3);
  MobilePlan m;
  m.travel_range_i = m.travel_range_j = 1;
  m.trajectories = {{{1, 1}, {2, 2}}};
  const auto eval = evaluate_combined(g, {{{2, 2}}}, m);
  EXPECT_DOUBLE_EQ(eval.coverage_ratio, 1.0);
  EXPECT_TRUE(eval.mobile_overlap.empty());
}

TEST(EvaluateCombined, StationaryNodeHasNoMovements) {
  MobilePlan m;
  m.travel_range_i = m.travel_range_j = 1;
  m.trajectories = {{{5, 5}, {5, 5}, {5, 5}}};
  const auto eval = evaluate_combined(grid_of(7, 7), {{{2, 2}}}, m);
  EXPECT_EQ(eval.total_movements, 0);
  EXPECT_EQ(eval.visited_cells, 3);
  EXPECT_EQ(eval.covered_count(), 18);
}

TEST(EvaluateCombined, TravelRangeViolationNamesNodeStepAndDelta) {
  MobilePlan m;
  m.travel_range_i = 1;
  m.travel_range_j = 1;
  m.trajectories = {{{1, 1}, {2, 2}, {2, 5}}, {{4, 4}, {4, 5}, {4, 5}}};
  try {
    evaluate_combined(grid_of(7, 7), {}, m);
    FAIL() << "expected InvalidPlan";
  } catch (const InvalidPlan& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("node 1"), std::string::npos) << what;
    EXPECT_NE(what.find("timestep 3"), std::string::npos) << what;
    EXPECT_NE(what.find("(0,3)"), std::string::npos) << what;
  }
}

TEST(EvaluateCombined, InactiveStepsSenseNothingAndDoNotMove) {
  MobilePlan m;
  m.travel_range_i = m.travel_range_j = 1;
  m.trajectories = {{{2, 2}, {7, 7}, {3, 3}}};
  m.active = {{true, false, true}};
  const auto eval = evaluate_combined(grid_of(7, 7), {}, m);
  EXPECT_EQ(eval.visited_cells, 2);
  EXPECT_EQ(eval.total_movements, 1);
  EXPECT_EQ(eval.covered_cells.count({7, 7}), 0u);
}

// Random plans checked against direct recounts.
class RandomPlans : public ::testing::TestWithParam<int> {};

TEST_P(RandomPlans, CoverageProperties) {
  std::mt19937_64 gen(static_cast<std::uint64_t>(GetParam()));
  auto draw = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  const auto g = grid_of(draw(1, 8), draw(1, 8), draw(0, 2));
  auto random_cell = [&] { return CellCoord{draw(1, g.rows), draw(1, g.cols)}; };

  StaticPlan s;
  const int ns = draw(0, 4);
  for (int k = 0; k < ns; ++k) s.positions.push_back(random_cell());
  MobilePlan m;
  m.travel_range_i = draw(0, 2);
  m.travel_range_j = draw(0, 2);
  const int nm = draw(0, 3), steps = draw(1, 4);
  for (int l = 0; l < nm; ++l) {
    std::vector<CellCoord> path{random_cell()};
    while (static_cast<int>(path.size()) < steps) {
      const auto options = box_cells(g, path.back(), m.travel_range_i, m.travel_range_j);
      path.push_back(options[static_cast<std::size_t>(draw(0, static_cast<int>(options.size()) - 1))]);
    }
    m.trajectories.push_back(path);
  }

  const auto st = static_coverage(g, s);
  const auto eval = evaluate_combined(g, s, m);
  EXPECT_EQ(eval.covered_cells.size() + eval.uncovered_cells.size(),
            static_cast<std::size_t>(g.cell_count()));
  EXPECT_LE(eval.total_movements, nm * (steps - 1));
  EXPECT_DOUBLE_EQ(eval.coverage_ratio,
                   static_cast<double>(eval.covered_count()) / g.cell_count());

  // empty mobile plan reproduces static coverage
  const auto bare = evaluate_combined(g, s, MobilePlan{});
  EXPECT_EQ(bare.covered_cells, st.covered_cells);
  EXPECT_EQ(bare.overlap_histogram, st.overlap_histogram);

  // adding a static node never loses coverage
  StaticPlan more = s;
  more.positions.push_back(random_cell());
  EXPECT_GE(static_coverage(g, more).covered_count(), st.covered_count());

  // histogram against a recount of sensing sets
  for (const auto& c : all_cells(g)) {
    int static_count = 0, mobile_count = 0;
    for (const auto& p : s.positions) static_count += neighborhood(g, p, g.sensing_radius).count(c);
    for (const auto& path : m.trajectories)
      for (const auto& p : path) mobile_count += neighborhood(g, p, g.sensing_radius).count(c);
    const int expected = static_count > 0 ? static_count : mobile_count;
    const auto it = eval.overlap_histogram.find(c);
    EXPECT_EQ(it == eval.overlap_histogram.end() ? 0 : it->second, expected) << c;
    EXPECT_EQ(eval.covered_cells.count(c) == 1, static_count + mobile_count > 0) << c;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPlans, ::testing::Range(0, 200));

}  // namespace
}  // namespace meshplan
