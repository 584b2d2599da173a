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

#ifndef TPOT_CAPACITY_H_
#define TPOT_CAPACITY_H_

#include <string>
#include <vector>

#include "tpot/errors.h"
#include "tpot/lp.h"
#include "tpot/matrix.h"
#include "tpot/measures.h"

namespace tpot {

// Transport from `a` to `b` spread over `steps` time steps. Step i moves
// gamma^i with 0 <= gamma^i <= capacities[i] at unit cost costs[i]; the
// summed plan must have marginals a and b. Capacity entries may be kInfinity.
struct CapacityInstance {
  DiscreteMeasure a;
  DiscreteMeasure b;
  std::size_t steps = 1;
  std::vector<CostMatrix> costs;
  std::vector<Matrix> capacities;

  // Throws InvalidArgument on wrong list lengths, shapes or negative entries.
  void Validate() const;
  // True when every step shares the same cost and the same capacity matrix.
  bool IsStationary() const;
};

// Instance with the same cost and capacity at each of `steps` steps.
CapacityInstance MakeStationaryInstance(DiscreteMeasure a, DiscreteMeasure b,
                                        std::size_t steps, CostMatrix cost,
                                        Matrix capacity);

struct TimeExpandedPlan {
  std::vector<TransportPlan> gammas;
  TransportPlan aggregate;
  double cost = 0.0;
  std::int64_t iterations = 0;
};

// Cheap necessary conditions: a source (sink) cannot ship (receive) more than
// its total capacity summed over all steps.
FeasibilityReport ScreenFeasibility(const CapacityInstance& inst);

// Full time-expanded LP: steps * n * m variables, each bounded by its
// capacity, with the marginal rows on the summed plan. Only the aggregate and
// the cost are unique; the per-step split is whatever the basis gives.
// Throws InfeasibleInstanceError carrying the screening report.
TimeExpandedPlan SolveGeneral(const CapacityInstance& inst,
                              const SolverConfig& config = {});

// Stationary instances only: solves the n * m LP
//   min <C, P>  s.t.  P 1 = a,  P^T 1 = b,  0 <= P <= steps * M
// and splits P evenly, gamma^i = P / steps. Its optimum equals the one of
// SolveGeneral because averaging any feasible sequence keeps it feasible
// without changing the cost.
// Throws InvalidArgument if the instance is not stationary and
// InfeasibleInstanceError if no plan exists.
TimeExpandedPlan SolveUniformFast(const CapacityInstance& inst,
                                  const SolverConfig& config = {});

// Smallest step count at which the capacity bound stops binding for the
// Kantorovich plan F* returned by the solver:
//   ceil(max_{jk} F*_jk / M_jk), at least 1.
// Throws NotApplicableError if some M_jk == 0 carries mass in F*.
int MinimalStepsForUnconstrained(const DiscreteMeasure& a,
                                 const DiscreteMeasure& b,
                                 const CostMatrix& cost,
                                 const Matrix& capacity,
                                 const SolverConfig& config = {});

// Human-readable violations of the plan's invariants against the instance
// (aggregate consistency, capacity bounds, marginals, cost); empty if none.
std::vector<std::string> CheckPlan(const CapacityInstance& inst,
                                   const TimeExpandedPlan& plan,
                                   double tol = 1e-9);

}  // namespace tpot

#endif  // TPOT_CAPACITY_H_
