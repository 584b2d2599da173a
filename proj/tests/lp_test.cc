// Copyright 2026 The tpot Authors.
//
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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"
#include "tpot/errors.h"
#include "tpot/lp.h"

namespace tpot {
namespace {

LinearProgram SingleVariable(double rhs, double upper) {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.eq_matrix = Matrix{{1.0}};
  lp.eq_rhs = {rhs};
  lp.upper_bounds = {upper};
  return lp;
}

// Variables F_jk of the worked example with bounds N M and marginal rows.
LinearProgram WorkedExampleLp() {
  LinearProgram lp;
  lp.objective = {1, 4, 3, 6};
  lp.eq_matrix = Matrix{{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}};
  lp.eq_rhs = {6, 8, 4, 10};
  lp.upper_bounds = {2, 4, 4, 8};
  return lp;
}

TEST(SolveLpTest, ForcedSingleVariable) {
  const LpSolution sol = SolveLp(SingleVariable(1.0, 2.0));
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.values[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.objective_value, 1.0, 1e-12);
}

TEST(SolveLpTest, BoundConflictIsInfeasible) {
  EXPECT_EQ(SolveLp(SingleVariable(3.0, 2.0)).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, WorkedExampleHasObjective60) {
  const LpSolution sol = SolveLp(WorkedExampleLp());
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective_value, 60.0, 1e-9);
  const std::vector<double> forced = {2, 4, 2, 6};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(sol.values[i], forced[i], 1e-9);
}

TEST(SolveLpTest, UnboundedRay) {
  LinearProgram lp;
  lp.objective = {-1.0, 0.0};
  lp.eq_matrix = Matrix{{1.0, -1.0}};
  lp.eq_rhs = {0.0};
  lp.upper_bounds = {kInfinity, kInfinity};
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, IterationCapIsAStatus) {
  LinearProgram lp = WorkedExampleLp();
  SolverConfig config;
  config.iteration_cap = 1;
  EXPECT_EQ(SolveLp(lp, config).status, LpStatus::kIterationLimit);
}

TEST(SolveLpTest, DimensionMismatchThrows) {
  LinearProgram lp = SingleVariable(1.0, 2.0);
  lp.eq_rhs = {1.0, 2.0};
  EXPECT_THROW(SolveLp(lp), InvalidArgument);
  lp = SingleVariable(1.0, -1.0);
  EXPECT_THROW(SolveLp(lp), InvalidArgument);
}

TEST(SolveLpTest, UnknownBackendThrows) {
  EXPECT_THROW(MakeBackend("cplex"), InvalidArgument);
  EXPECT_EQ(AvailableBackends().front(), "simplex");
}

TEST(CheckFeasibleTest, Examples) {
  EXPECT_TRUE(CheckFeasible(SingleVariable(1.0, 2.0)));
  EXPECT_FALSE(CheckFeasible(SingleVariable(3.0, 2.0)));
  EXPECT_TRUE(CheckFeasible(WorkedExampleLp()));
}

TEST(SolveLpTest, RedundantRowsAreHandled) {
  LinearProgram lp;
  lp.objective = {1.0, 2.0};
  lp.eq_matrix = Matrix{{1.0, 1.0}, {2.0, 2.0}};
  lp.eq_rhs = {1.0, 2.0};
  lp.upper_bounds = {kInfinity, kInfinity};
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective_value, 1.0, 1e-12);
}

// Random bounded LPs built around a known feasible point, compared with
// vertex enumeration.
class RandomLpTest : public ::testing::TestWithParam<std::string> {};

TEST_P(RandomLpTest, MatchesVertexEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SolverConfig config;
  config.backend = MakeBackend(GetParam());
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t vars = 2 + rng() % 5;
    const std::size_t rows = 1 + rng() % std::min<std::size_t>(3, vars);
    LinearProgram lp;
    lp.eq_matrix = Matrix(rows, vars);
    std::vector<double> x0(vars);
    for (std::size_t i = 0; i < vars; ++i) {
      lp.objective.push_back(u(rng));
      lp.upper_bounds.push_back(rng() % 3 == 0 ? kInfinity : 1.0 + u(rng) * 0.5);
      x0[i] = std::isinf(lp.upper_bounds[i]) ? 0.7 : 0.5 * lp.upper_bounds[i];
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double rhs = 0.0;
      for (std::size_t i = 0; i < vars; ++i) {
        lp.eq_matrix(r, i) = std::round(u(rng) * 3.0);
        rhs += lp.eq_matrix(r, i) * x0[i];
      }
      lp.eq_rhs.push_back(rhs);
    }
    const LpSolution sol = SolveLp(lp, config);
    const auto ref = testing::EnumerateVertices(
        lp.objective, testing::ToDense(lp.eq_matrix), lp.eq_rhs,
        lp.upper_bounds);
    ASSERT_TRUE(ref.has_value()) << "trial " << trial;
    if (sol.status == LpStatus::kUnbounded) {
      // Vertices cannot witness a ray; only an infinite bound admits one.
      EXPECT_TRUE(std::any_of(lp.upper_bounds.begin(), lp.upper_bounds.end(),
                              [](double v) { return std::isinf(v); }));
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(sol.objective_value, *ref, 1e-8) << "trial " << trial;
    EXPECT_LE(EqualityResidual(lp, sol.values), 1e-9);
    double recomputed = 0.0;
    for (std::size_t i = 0; i < vars; ++i) {
      EXPECT_GE(sol.values[i], -1e-9);
      EXPECT_LE(sol.values[i], lp.upper_bounds[i] + 1e-9);
      recomputed += lp.objective[i] * sol.values[i];
    }
    EXPECT_NEAR(recomputed, sol.objective_value, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, RandomLpTest,
                         ::testing::Values("simplex", "simplex-bland"));

// All upper bounds finite: enumeration is exact, so no unbounded escape.
TEST(SolveLpPropertyTest, BoxedProblemsMatchEnumerationExactly) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t vars = 2 + rng() % 5;
    const std::size_t rows = 1 + rng() % 2;
    LinearProgram lp;
    lp.eq_matrix = Matrix(rows, vars);
    std::vector<double> x0(vars);
    for (std::size_t i = 0; i < vars; ++i) {
      lp.objective.push_back(u(rng) - 0.5);
      lp.upper_bounds.push_back(0.5 + u(rng));
      x0[i] = u(rng) * lp.upper_bounds[i];
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double rhs = 0.0;
      for (std::size_t i = 0; i < vars; ++i) {
        lp.eq_matrix(r, i) = u(rng);
        rhs += lp.eq_matrix(r, i) * x0[i];
      }
      lp.eq_rhs.push_back(rhs);
    }
    const LpSolution sol = SolveLp(lp);
    const auto ref = testing::EnumerateVertices(
        lp.objective, testing::ToDense(lp.eq_matrix), lp.eq_rhs,
        lp.upper_bounds);
    ASSERT_TRUE(ref.has_value());
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(sol.objective_value, *ref, 1e-8) << "trial " << trial;
  }
}

TEST(SolveLpPropertyTest, IdenticalInputsGiveIdenticalPivots) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LinearProgram lp;
  const std::size_t n = 5, m = 5;
  lp.eq_matrix = Matrix(n + m, n * m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      lp.objective.push_back(u(rng));
      lp.upper_bounds.push_back(kInfinity);
      lp.eq_matrix(j, j * m + k) = 1.0;
      lp.eq_matrix(n + k, j * m + k) = 1.0;
    }
  }
  for (std::size_t i = 0; i < n + m; ++i) lp.eq_rhs.push_back(0.2);
  SolverConfig config;
  config.record_pivots = true;
  const LpSolution first = SolveLp(lp, config);
  const LpSolution second = SolveLp(lp, config);
  ASSERT_TRUE(first.optimal());
  EXPECT_FALSE(first.pivots.empty());
  EXPECT_EQ(first.pivots, second.pivots);
  EXPECT_EQ(first.values, second.values);  // bitwise
  EXPECT_EQ(first.objective_value, second.objective_value);
}

// Assignment polytope: every basis is highly degenerate.
TEST(SolveLpPropertyTest, DegenerateAssignmentTerminates) {
  for (const char* backend : {"simplex", "simplex-bland"}) {
    const std::size_t n = 8;
    LinearProgram lp;
    lp.eq_matrix = Matrix(2 * n, n * n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        lp.objective.push_back(static_cast<double>((j * 7 + k * 3) % 5));
        lp.upper_bounds.push_back(kInfinity);
        lp.eq_matrix(j, j * n + k) = 1.0;
        lp.eq_matrix(n + k, j * n + k) = 1.0;
      }
    }
    lp.eq_rhs.assign(2 * n, 1.0);
    SolverConfig config;
    config.backend = MakeBackend(backend);
    const LpSolution sol = SolveLp(lp, config);
    ASSERT_TRUE(sol.optimal()) << backend;
    EXPECT_LE(EqualityResidual(lp, sol.values), 1e-9);
  }
}

// A single feasible point is returned exactly.
TEST(SolveLpPropertyTest, SinglePointFeasibleSet) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    LinearProgram lp;
    lp.eq_matrix = Matrix(n, n);
    std::vector<double> point(n);
    for (std::size_t i = 0; i < n; ++i) {
      point[i] = u(rng);
      lp.objective.push_back(u(rng) - 0.5);
      lp.upper_bounds.push_back(point[i]);
      lp.eq_matrix(i, i) = 1.0;
      lp.eq_rhs.push_back(point[i]);
    }
    const LpSolution sol = SolveLp(lp);
    ASSERT_TRUE(sol.optimal());
    EXPECT_LE(MaxAbsDiff(sol.values, point), 1e-9);
  }
}

}  // namespace
}  // namespace tpot
