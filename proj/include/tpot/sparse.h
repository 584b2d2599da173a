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

#ifndef TPOT_SPARSE_H_
#define TPOT_SPARSE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tpot/lp.h"
#include "tpot/matrix.h"
#include "tpot/measures.h"

namespace tpot {

// Plan entries at or below this magnitude count as zero for sparsity budgets.
inline constexpr double kSparsityZero = 1e-9;

// Kantorovich problem with at most budgets[j] nonzero entries in row j.
// A budget above the column count leaves that row unconstrained.
struct SparsityInstance {
  DiscreteMeasure a;
  DiscreteMeasure b;
  CostMatrix cost;
  std::vector<int> budgets;

  // Throws InvalidArgument on shape errors, budgets < 1, or unequal masses.
  void Validate() const;
  // min(budgets[j], number of columns).
  int EffectiveBudget(std::size_t j) const;
};

// Which plan entries may be nonzero.
class SupportPattern {
 public:
  SupportPattern() = default;
  SupportPattern(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), mask_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool allowed(std::size_t r, std::size_t c) const {
    return mask_[r * cols_ + c] != 0;
  }
  void allow(std::size_t r, std::size_t c) { mask_[r * cols_ + c] = 1; }
  int RowCount(std::size_t r) const;
  std::vector<int> RowColumns(std::size_t r) const;

  bool operator==(const SupportPattern&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> mask_;
};

// Per-entry importance; higher means more likely to carry mass.
struct ImportanceScore {
  Matrix scores;
  int surrogate = 0;  // 1..4, 0 for a user-supplied matrix
  double lambda = 0.0;
};

inline constexpr double kDefaultBlend = 0.7;

// Surrogate scores built from the outer product a x b (entry a_j b_k):
//   1: (a x b) o C
//   2: 1 / ((a x b) o C)
//   3: the unconstrained Kantorovich optimal plan
//   4: lambda (a x b) + (1 - lambda) C
// Throws DegenerateScoreError when surrogate 2 meets a zero product entry,
// InvalidArgument for an unknown surrogate or lambda outside [0, 1].
ImportanceScore Importance(const DiscreteMeasure& a, const DiscreteMeasure& b,
                           const CostMatrix& cost, int surrogate,
                           double lambda = kDefaultBlend,
                           const SolverConfig& config = {});

struct ScoredPattern {
  SupportPattern pattern;
  double score = 0.0;  // sum of the selected entries' scores
};

// Lazily enumerates every pattern that selects exactly min(budget_j, m)
// entries in each row j, in non-increasing order of total selected score.
// Ties go to the lexicographically smaller list of (row, column) pairs.
class PatternEnumerator {
 public:
  // `scores` must outlive the enumerator.
  PatternEnumerator(const Matrix& scores, std::span<const int> budgets);
  ~PatternEnumerator();
  PatternEnumerator(const PatternEnumerator&) = delete;
  PatternEnumerator& operator=(const PatternEnumerator&) = delete;

  // Next pattern, or nullopt once all patterns were produced.
  std::optional<ScoredPattern> Next();

 private:
  class RowStream;
  struct State;

  bool Before(const State& lhs, const State& rhs) const;

  std::vector<std::unique_ptr<RowStream>> rows_;
  std::vector<State> heap_;
  std::size_t cols_;
};

struct SparseResult {
  TransportPlan plan;
  double cost = 0.0;
  SupportPattern pattern;
  // Restricted LPs solved (heuristic: attempts; oracle: patterns tried).
  int lp_solves = 0;
};

// Transport LP where entries outside `pattern` are pinned to zero and, when
// `capacity` is given, allowed entries are bounded by it. Returns nullopt if
// the restricted problem is infeasible.
std::optional<SparseResult> SolveRestricted(const DiscreteMeasure& a,
                                            const DiscreteMeasure& b,
                                            const CostMatrix& cost,
                                            const SupportPattern& pattern,
                                            const Matrix* capacity = nullptr,
                                            const SolverConfig& config = {});

struct HeuristicOptions {
  int attempt_cap = 1000;
  // Optional per-entry upper bounds on the restricted LPs.
  std::optional<Matrix> capacity;
  SolverConfig lp;
};

// Walks patterns from the most to the least important and returns the first
// whose restricted LP is feasible. Throws HeuristicExhaustedError when
// attempt_cap patterns (or all patterns) fail.
SparseResult HeuristicSolve(const SparsityInstance& inst,
                            const ImportanceScore& score,
                            const HeuristicOptions& options = {});

struct OracleOptions {
  double enumeration_cap = 1e6;
  SolverConfig lp;
};

// Number of exactly-budget patterns, prod_j binom(m, min(s_j, m)), as a
// double so that huge counts do not overflow.
double PatternCount(std::size_t cols, std::span<const int> budgets);

// Exhaustive search over every exactly-budget pattern; the minimum over them
// is the true sparse optimum since a pattern with fewer entries is contained
// in one with exactly s_j. Ties keep the earliest pattern in enumeration
// order. Throws OracleTooLargeError above the enumeration cap and
// InfeasibleInstanceError when no pattern is feasible.
SparseResult OracleSolve(const SparsityInstance& inst,
                         const OracleOptions& options = {});

struct BaselineSample {
  SupportPattern pattern;
  std::optional<double> cost;  // nullopt: restricted LP infeasible
};

// Draws `samples` patterns, each row choosing its budget of columns uniformly
// at random, and solves their restricted LPs. Reproducible for a given seed.
std::vector<BaselineSample> RandomBaseline(const SparsityInstance& inst,
                                           int samples, std::uint64_t seed,
                                           const SolverConfig& config = {});

struct SparsityMetrics {
  double additional_cost_pct = 0.0;
  double time_saved_pct = 0.0;
  // Absent when no baseline sample was feasible.
  std::optional<double> solutions_beat_pct;
};

// additional cost = 100 (c_h - c_o) / c_o, time saved = 100 (t_o - t_h) / t_o,
// solutions beat = share of feasible baselines costlier than c_h.
// Throws InvalidArgument unless oracle_cost > 0 and oracle_time > 0.
SparsityMetrics ComputeSparsityMetrics(double heuristic_cost,
                                       double oracle_cost,
                                       double heuristic_time,
                                       double oracle_time,
                                       std::span<const BaselineSample> baseline);

}  // namespace tpot

#endif  // TPOT_SPARSE_H_
