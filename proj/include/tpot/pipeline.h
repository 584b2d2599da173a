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

#ifndef TPOT_PIPELINE_H_
#define TPOT_PIPELINE_H_

#include <vector>

#include "tpot/capacity.h"
#include "tpot/lp.h"
#include "tpot/sparse.h"

namespace tpot {

struct PipelineConfig {
  int surrogate = 4;
  double lambda = kDefaultBlend;
  int attempt_cap = 1000;
  // Keep 0 <= gamma^i <= M^i while sparsifying. Turning this off drops the
  // capacities in the second stage, which may overrun them.
  bool enforce_capacity_in_sparse_step = true;
  SolverConfig lp;
};

struct PipelineResult {
  // Sparsified per-step plans; the aggregate keeps marginals a and b.
  TimeExpandedPlan plan;
  // First-stage capacity-constrained optimum the step marginals came from.
  TimeExpandedPlan capacity_plan;
  bool used_fast_path = false;
  // Patterns tried per step.
  std::vector<int> attempts;
};

// Two-stage approximation of the joint capacity + sparsity problem:
//   1. solve the capacity problem (uniform reformulation when the instance is
//      stationary, the full time-expanded LP otherwise);
//   2. read each step's marginals off its plan;
//   3. sparsify each step with the importance-score heuristic against those
//      marginals and the step's cost.
// `budgets` holds one budget vector per step, or a single vector used at
// every step. Throws PipelineStepError naming the first step that fails.
PipelineResult SolveCombined(const CapacityInstance& inst,
                             const std::vector<std::vector<int>>& budgets,
                             const PipelineConfig& config = {});

}  // namespace tpot

#endif  // TPOT_PIPELINE_H_
