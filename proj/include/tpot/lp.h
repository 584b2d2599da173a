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

#ifndef TPOT_LP_H_
#define TPOT_LP_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tpot/matrix.h"

namespace tpot {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// min objective . x  s.t.  eq_matrix x = eq_rhs,  0 <= x <= upper_bounds.
// An upper bound of kInfinity leaves the variable unbounded above.
struct LinearProgram {
  std::vector<double> objective;
  Matrix eq_matrix;
  std::vector<double> eq_rhs;
  std::vector<double> upper_bounds;

  std::size_t variable_count() const { return objective.size(); }
  std::size_t constraint_count() const { return eq_rhs.size(); }

  // Throws InvalidArgument on inconsistent dimensions, negative or NaN upper
  // bounds, or non-finite coefficients.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // Present (non-empty) iff status is kOptimal.
  std::vector<double> values;
  double objective_value = 0.0;
  std::int64_t iterations = 0;
  double wall_time = 0.0;  // seconds
  // (entering, leaving) variable indices of every basis change, in order.
  // Only filled when SolverConfig::record_pivots is set. Bound flips are
  // recorded with leaving == entering.
  std::vector<std::pair<int, int>> pivots;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

enum class PricingRule {
  // Most-negative reduced cost; falls back to Bland's rule after
  // `degenerate_threshold` consecutive degenerate pivots.
  kDantzigWithBlandFallback,
  // Lowest-index improving variable throughout.
  kBland,
};

class LpBackend;

struct SolverConfig {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  // 0 selects 50 * (variables + constraints).
  std::int64_t iteration_cap = 0;
  PricingRule pricing = PricingRule::kDantzigWithBlandFallback;
  int degenerate_threshold = 50;
  int refactor_interval = 64;
  bool record_pivots = false;
  // Null selects the built-in bounded-variable simplex.
  std::shared_ptr<const LpBackend> backend;
};

// Any LP engine usable behind SolveLp.
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual std::string name() const = 0;
  virtual LpSolution Solve(const LinearProgram& lp,
                           const SolverConfig& config) const = 0;
};

// Two-phase bounded-variable primal simplex with a dense explicit basis
// inverse. Nonbasic variables sit at 0 or at their upper bound, so capacity
// bounds need no slack rows. Phase one uses one artificial per row; after it
// the artificials are pinned to zero and stay in the problem, which takes care
// of redundant equality rows (a transport problem always has one).
class SimplexBackend final : public LpBackend {
 public:
  std::string name() const override;
  LpSolution Solve(const LinearProgram& lp,
                   const SolverConfig& config) const override;
};

// Backend instances by name: "simplex" (Dantzig pricing with Bland fallback)
// and "simplex-bland" (Bland's rule throughout). Throws InvalidArgument on an
// unknown name.
std::shared_ptr<const LpBackend> MakeBackend(std::string_view name);
std::vector<std::string> AvailableBackends();

// Solves with config.backend, or the built-in simplex when none is set.
// Deterministic for identical inputs and config.
LpSolution SolveLp(const LinearProgram& lp, const SolverConfig& config = {});

// True iff phase one drives the artificial objective to zero within feas_tol.
bool CheckFeasible(const LinearProgram& lp, const SolverConfig& config = {});

// Largest |A x - r|_i.
double EqualityResidual(const LinearProgram& lp, std::span<const double> x);

}  // namespace tpot

#endif  // TPOT_LP_H_
