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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"
#include "tpot/errors.h"
#include "tpot/ot.h"
#include "tpot/pipeline.h"

namespace tpot {
namespace {

using testing::ToMatrix;

CapacityInstance WorkedExample() {
  return MakeStationaryInstance(DiscreteMeasure({6, 8}), DiscreteMeasure({4, 10}),
                                2, Matrix{{1, 4}, {3, 6}}, Matrix{{1, 2}, {2, 4}});
}

CapacityInstance RandomCombined(std::mt19937_64& rng, std::size_t n,
                                std::size_t m, std::size_t steps) {
  const DiscreteMeasure a(testing::Normalized(testing::RandomWeights(rng, n)));
  const DiscreteMeasure b(testing::Normalized(testing::RandomWeights(rng, m)));
  const Matrix c = ToMatrix(testing::RandomDense(rng, n, m, 0.05, 1.0));
  Matrix cap = ProductPlan(a, b) * (3.0 / steps);
  return MakeStationaryInstance(a, b, steps, c, cap);
}

TEST(PipelineTest, InactiveBudgetKeepsTheCapacityOptimum) {
  const PipelineResult r = SolveCombined(WorkedExample(), {{2, 2}});
  EXPECT_TRUE(r.used_fast_path);
  EXPECT_NEAR(r.plan.cost, 60.0, 1e-9);
  for (const Matrix& g : r.plan.gammas) {
    EXPECT_LE(MaxAbsDiff(g, Matrix{{1, 2}, {1, 3}}), 1e-9);
  }
}

// The uniform split gives every step marginals (3, 4) and (2, 5). With one
// entry per row a plan sends each row to a single column, and none of the
// four choices reproduces (2, 5).
TEST(PipelineTest, OneSparseStepsAreInfeasible) {
  const std::vector<double> mu = {3, 4}, nu = {2, 5};
  int feasible = 0;
  for (int c0 = 0; c0 < 2; ++c0) {
    for (int c1 = 0; c1 < 2; ++c1) {
      testing::DenseMatrix upper = {{0, 0}, {0, 0}};
      upper[0][c0] = INFINITY;
      upper[1][c1] = INFINITY;
      if (testing::BruteForceTransport(mu, nu, {{1, 4}, {3, 6}}, &upper)) {
        ++feasible;
      }
    }
  }
  ASSERT_EQ(feasible, 0);
  try {
    SolveCombined(WorkedExample(), {{1, 1}});
    FAIL() << "expected PipelineStepError";
  } catch (const PipelineStepError& e) {
    EXPECT_EQ(e.step(), 0u);
  }
}

TEST(PipelineTest, StepCountOfBudgetsMustMatch) {
  EXPECT_THROW(SolveCombined(WorkedExample(), {{2, 2}, {2, 2}, {2, 2}}),
               InvalidArgument);
}

TEST(PipelineTest, TimeVaryingInstanceUsesTheGeneralPath) {
  CapacityInstance inst = WorkedExample();
  inst.costs[1] = Matrix{{2, 4}, {3, 6}};
  const PipelineResult r = SolveCombined(inst, {{2, 2}});
  EXPECT_FALSE(r.used_fast_path);
  EXPECT_NEAR(r.plan.cost, r.capacity_plan.cost, 1e-9);
}

TEST(PipelinePropertyTest, ClosureBudgetsAndCapacity) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3, m = 4, steps = 1 + rng() % 3;
    const CapacityInstance inst = RandomCombined(rng, n, m, steps);
    const std::vector<std::vector<int>> budgets = {std::vector<int>(n, 2)};
    PipelineResult r;
    try {
      r = SolveCombined(inst, budgets);
    } catch (const PipelineStepError&) {
      continue;  // a step may have no feasible 2-sparse pattern
    }
    EXPECT_LE(MaxAbsDiff(RowSums(r.plan.aggregate), inst.a.weights()), 1e-9);
    EXPECT_LE(MaxAbsDiff(ColSums(r.plan.aggregate), inst.b.weights()), 1e-9);
    for (std::size_t i = 0; i < steps; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_LE(CountNonzerosInRow(r.plan.gammas[i], j, 1e-9), 2);
        for (std::size_t k = 0; k < m; ++k) {
          EXPECT_LE(r.plan.gammas[i](j, k), inst.capacities[i](j, k) + 1e-9);
          EXPECT_GE(r.plan.gammas[i](j, k), -1e-9);
        }
      }
    }
    const double kantorovich =
        SolveKantorovich(inst.a, inst.b, inst.costs[0]).cost;
    EXPECT_LE(kantorovich, r.capacity_plan.cost + 1e-9);
    EXPECT_LE(r.capacity_plan.cost, r.plan.cost + 1e-9);
    EXPECT_TRUE(CheckPlan(inst, r.plan).empty());
  }
}

TEST(PipelinePropertyTest, CapacityOffStillClosesMarginals) {
  std::mt19937_64 rng(34);
  PipelineConfig config;
  config.enforce_capacity_in_sparse_step = false;
  for (int trial = 0; trial < 10; ++trial) {
    const CapacityInstance inst = RandomCombined(rng, 3, 3, 2);
    const PipelineResult r = SolveCombined(inst, {{2, 2, 2}}, config);
    EXPECT_LE(MaxAbsDiff(RowSums(r.plan.aggregate), inst.a.weights()), 1e-9);
    EXPECT_LE(MaxAbsDiff(ColSums(r.plan.aggregate), inst.b.weights()), 1e-9);
  }
}

}  // namespace
}  // namespace tpot
