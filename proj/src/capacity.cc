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

#include "tpot/capacity.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpot/ot.h"

namespace tpot {

namespace {

constexpr double kPlanZero = 1e-12;

void ValidateCapacity(const Matrix& cap, std::size_t n, std::size_t m,
                      std::size_t step) {
  if (cap.rows() != n || cap.cols() != m) {
    throw InvalidArgument("capacities[" + std::to_string(step) + "] is " +
                          std::to_string(cap.rows()) + "x" +
                          std::to_string(cap.cols()) + ", expected " +
                          std::to_string(n) + "x" + std::to_string(m));
  }
  for (double v : cap.data()) {
    if (std::isnan(v) || v < 0.0) {
      throw InvalidArgument("capacities[" + std::to_string(step) +
                            "] has a negative entry");
    }
  }
}

bool Exceeds(double demand, double supply) {
  return supply < demand - 1e-12 * std::max(1.0, demand);
}

TimeExpandedPlan PlanFromSteps(std::vector<TransportPlan> gammas,
                               const std::vector<CostMatrix>& costs) {
  TimeExpandedPlan plan;
  plan.aggregate = Matrix(gammas.front().rows(), gammas.front().cols());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    plan.aggregate += gammas[i];
    plan.cost += FrobeniusInner(costs[i], gammas[i]);
  }
  plan.gammas = std::move(gammas);
  return plan;
}

}  // namespace

void CapacityInstance::Validate() const {
  if (steps < 1) throw InvalidArgument("CapacityInstance: steps must be >= 1");
  if (costs.size() != steps) {
    throw InvalidArgument("CapacityInstance: " + std::to_string(costs.size()) +
                          " cost matrices for " + std::to_string(steps) +
                          " steps");
  }
  if (capacities.size() != steps) {
    throw InvalidArgument("CapacityInstance: " +
                          std::to_string(capacities.size()) +
                          " capacity matrices for " + std::to_string(steps) +
                          " steps");
  }
  for (std::size_t i = 0; i < steps; ++i) {
    ValidateCostMatrix(costs[i], a.size(), b.size(),
                       "costs[" + std::to_string(i) + "]");
    ValidateCapacity(capacities[i], a.size(), b.size(), i);
  }
}

bool CapacityInstance::IsStationary() const {
  for (std::size_t i = 1; i < costs.size(); ++i) {
    if (!(costs[i] == costs[0])) return false;
  }
  for (std::size_t i = 1; i < capacities.size(); ++i) {
    if (!(capacities[i] == capacities[0])) return false;
  }
  return true;
}

CapacityInstance MakeStationaryInstance(DiscreteMeasure a, DiscreteMeasure b,
                                        std::size_t steps, CostMatrix cost,
                                        Matrix capacity) {
  CapacityInstance inst;
  inst.a = std::move(a);
  inst.b = std::move(b);
  inst.steps = steps;
  inst.costs.assign(steps, cost);
  inst.capacities.assign(steps, capacity);
  return inst;
}

FeasibilityReport ScreenFeasibility(const CapacityInstance& inst) {
  const std::size_t n = inst.a.size();
  const std::size_t m = inst.b.size();
  std::vector<double> row_cap(n, 0.0);
  std::vector<double> col_cap(m, 0.0);
  for (const Matrix& cap : inst.capacities) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        row_cap[j] += cap(j, k);
        col_cap[k] += cap(j, k);
      }
    }
  }
  FeasibilityReport report;
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.a[j] > 0.0 && row_cap[j] == 0.0) report.row_violations.push_back(j);
    if (Exceeds(inst.a[j], row_cap[j])) {
      report.capacity_shortfall.sources.push_back(j);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (inst.b[k] > 0.0 && col_cap[k] == 0.0) report.col_violations.push_back(k);
    if (Exceeds(inst.b[k], col_cap[k])) {
      report.capacity_shortfall.sinks.push_back(k);
    }
  }
  return report;
}

TimeExpandedPlan SolveGeneral(const CapacityInstance& inst,
                              const SolverConfig& config) {
  inst.Validate();
  RequireEqualMass(inst.a, inst.b, "SolveGeneral");
  FeasibilityReport report = ScreenFeasibility(inst);
  if (!report.empty()) {
    throw InfeasibleInstanceError(
        "SolveGeneral: capacities cannot carry the marginals",
        std::move(report));
  }
  const LinearProgram lp = BuildTransportLp(inst.a.weights(), inst.b.weights(),
                                            inst.costs, inst.capacities);
  const LpSolution sol = SolveLp(lp, config);
  if (sol.status == LpStatus::kInfeasible) {
    throw InfeasibleInstanceError("SolveGeneral: no feasible time-expanded plan",
                                  std::move(report));
  }
  if (!sol.optimal()) {
    throw Error("SolveGeneral: LP ended with status " +
                std::string(ToString(sol.status)));
  }
  std::vector<TransportPlan> gammas;
  gammas.reserve(inst.steps);
  for (std::size_t i = 0; i < inst.steps; ++i) {
    gammas.push_back(ExtractPlan(sol.values, i, inst.a.size(), inst.b.size()));
  }
  TimeExpandedPlan plan = PlanFromSteps(std::move(gammas), inst.costs);
  plan.iterations = sol.iterations;
  return plan;
}

TimeExpandedPlan SolveUniformFast(const CapacityInstance& inst,
                                  const SolverConfig& config) {
  inst.Validate();
  if (!inst.IsStationary()) {
    throw InvalidArgument(
        "SolveUniformFast: costs and capacities must be identical at every "
        "step");
  }
  RequireEqualMass(inst.a, inst.b, "SolveUniformFast");
  const double steps = static_cast<double>(inst.steps);
  const Matrix total_capacity = inst.capacities.front() * steps;
  const LinearProgram lp =
      BuildTransportLp(inst.a.weights(), inst.b.weights(),
                       std::span(&inst.costs.front(), 1),
                       std::span(&total_capacity, 1));
  const LpSolution sol = SolveLp(lp, config);
  if (sol.status == LpStatus::kInfeasible) {
    throw InfeasibleInstanceError("SolveUniformFast: no feasible plan",
                                  ScreenFeasibility(inst));
  }
  if (!sol.optimal()) {
    throw Error("SolveUniformFast: LP ended with status " +
                std::string(ToString(sol.status)));
  }
  TimeExpandedPlan plan;
  plan.aggregate = ExtractPlan(sol.values, 0, inst.a.size(), inst.b.size());
  plan.cost = FrobeniusInner(inst.costs.front(), plan.aggregate);
  plan.gammas.assign(inst.steps, plan.aggregate * (1.0 / steps));
  plan.iterations = sol.iterations;
  return plan;
}

int MinimalStepsForUnconstrained(const DiscreteMeasure& a,
                                 const DiscreteMeasure& b,
                                 const CostMatrix& cost,
                                 const Matrix& capacity,
                                 const SolverConfig& config) {
  ValidateCapacity(capacity, a.size(), b.size(), 0);
  const OtResult ot = SolveKantorovich(a, b, cost, config);
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      const double f = ot.plan(j, k);
      if (f <= kPlanZero) continue;
      if (capacity(j, k) == 0.0) {
        throw NotApplicableError(
            "MinimalStepsForUnconstrained: zero capacity at (" +
            std::to_string(j) + ", " + std::to_string(k) +
            ") where the Kantorovich plan moves mass");
      }
      worst = std::max(worst, f / capacity(j, k));
    }
  }
  // Ratios that are integers up to LP round-off should not gain a step.
  const double nearest = std::round(worst);
  if (std::abs(worst - nearest) <= 1e-9 * std::max(1.0, worst)) worst = nearest;
  return std::max(1, static_cast<int>(std::ceil(worst)));
}

std::vector<std::string> CheckPlan(const CapacityInstance& inst,
                                   const TimeExpandedPlan& plan, double tol) {
  std::vector<std::string> issues;
  const std::size_t n = inst.a.size();
  const std::size_t m = inst.b.size();
  if (plan.gammas.size() != inst.steps) {
    issues.push_back("plan has " + std::to_string(plan.gammas.size()) +
                     " steps, expected " + std::to_string(inst.steps));
    return issues;
  }
  Matrix sum(n, m);
  double cost = 0.0;
  for (std::size_t i = 0; i < inst.steps; ++i) {
    const TransportPlan& g = plan.gammas[i];
    if (g.rows() != n || g.cols() != m) {
      issues.push_back("step " + std::to_string(i) + " has the wrong shape");
      return issues;
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (g(j, k) < -tol) {
          issues.push_back("step " + std::to_string(i) + " entry (" +
                           std::to_string(j) + ", " + std::to_string(k) +
                           ") is negative");
        }
        if (g(j, k) > inst.capacities[i](j, k) + tol) {
          issues.push_back("step " + std::to_string(i) + " entry (" +
                           std::to_string(j) + ", " + std::to_string(k) +
                           ") exceeds its capacity");
        }
      }
    }
    sum += g;
    cost += FrobeniusInner(inst.costs[i], g);
  }
  if (MaxAbsDiff(sum, plan.aggregate) > tol) {
    issues.push_back("aggregate differs from the sum of the steps");
  }
  const auto rows = RowSums(plan.aggregate);
  const auto cols = ColSums(plan.aggregate);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(rows[j] - inst.a[j]) > tol * std::max(1.0, inst.a[j])) {
      issues.push_back("row " + std::to_string(j) + " sum misses its marginal");
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(cols[k] - inst.b[k]) > tol * std::max(1.0, inst.b[k])) {
      issues.push_back("column " + std::to_string(k) +
                       " sum misses its marginal");
    }
  }
  if (std::abs(cost - plan.cost) > tol * std::max(1.0, std::abs(cost))) {
    issues.push_back("reported cost differs from the recomputed cost");
  }
  return issues;
}

}  // namespace tpot
