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

#include "tpot/pipeline.h"

#include <string>

#include "tpot/errors.h"

namespace tpot {

PipelineResult SolveCombined(const CapacityInstance& inst,
                             const std::vector<std::vector<int>>& budgets,
                             const PipelineConfig& config) {
  inst.Validate();
  if (config.attempt_cap < 1) {
    throw InvalidArgument("SolveCombined: attempt_cap must be >= 1");
  }
  if (budgets.size() != 1 && budgets.size() != inst.steps) {
    throw InvalidArgument("SolveCombined: need 1 or " +
                          std::to_string(inst.steps) + " budget vectors, got " +
                          std::to_string(budgets.size()));
  }

  PipelineResult result;
  result.used_fast_path = inst.IsStationary();
  result.capacity_plan = result.used_fast_path ? SolveUniformFast(inst, config.lp)
                                               : SolveGeneral(inst, config.lp);

  const std::size_t n = inst.a.size();
  const std::size_t m = inst.b.size();
  TimeExpandedPlan& out = result.plan;
  out.aggregate = Matrix(n, m);
  for (std::size_t i = 0; i < inst.steps; ++i) {
    const TransportPlan& step_plan = result.capacity_plan.gammas[i];
    const std::vector<int>& step_budgets =
        budgets.size() == 1 ? budgets.front() : budgets[i];
    try {
      SparsityInstance step;
      step.a = DiscreteMeasure(RowSums(step_plan));
      step.b = DiscreteMeasure(ColSums(step_plan));
      step.cost = inst.costs[i];
      step.budgets = step_budgets;
      if (TotalMass(step.a) == 0.0) {
        step.Validate();
        out.gammas.push_back(Matrix(n, m));
        result.attempts.push_back(0);
        continue;
      }
      const ImportanceScore score = Importance(
          step.a, step.b, step.cost, config.surrogate, config.lambda, config.lp);
      HeuristicOptions options;
      options.attempt_cap = config.attempt_cap;
      options.lp = config.lp;
      if (config.enforce_capacity_in_sparse_step) {
        options.capacity = inst.capacities[i];
      }
      SparseResult sparse = HeuristicSolve(step, score, options);
      result.attempts.push_back(sparse.lp_solves);
      out.gammas.push_back(std::move(sparse.plan));
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineStepError(i, e.what());
    }
    out.aggregate += out.gammas.back();
    out.cost += FrobeniusInner(inst.costs[i], out.gammas.back());
  }
  return result;
}

}  // namespace tpot
