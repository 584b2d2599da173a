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

#include "tpot/sparse.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "tpot/errors.h"
#include "tpot/ot.h"

namespace tpot {

void SparsityInstance::Validate() const {
  ValidateCostMatrix(cost, a.size(), b.size());
  if (budgets.size() != a.size()) {
    throw InvalidArgument("SparsityInstance: " +
                          std::to_string(budgets.size()) + " budgets for " +
                          std::to_string(a.size()) + " sources");
  }
  for (std::size_t j = 0; j < budgets.size(); ++j) {
    if (budgets[j] < 1) {
      throw InvalidArgument("SparsityInstance: budget " + std::to_string(j) +
                            " must be >= 1");
    }
  }
  RequireEqualMass(a, b, "SparsityInstance");
}

int SparsityInstance::EffectiveBudget(std::size_t j) const {
  return std::min(budgets[j], static_cast<int>(b.size()));
}

int SupportPattern::RowCount(std::size_t r) const {
  int count = 0;
  for (std::size_t c = 0; c < cols_; ++c) count += allowed(r, c) ? 1 : 0;
  return count;
}

std::vector<int> SupportPattern::RowColumns(std::size_t r) const {
  std::vector<int> out;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (allowed(r, c)) out.push_back(static_cast<int>(c));
  }
  return out;
}

ImportanceScore Importance(const DiscreteMeasure& a, const DiscreteMeasure& b,
                           const CostMatrix& cost, int surrogate,
                           double lambda, const SolverConfig& config) {
  ValidateCostMatrix(cost, a.size(), b.size());
  ImportanceScore out;
  out.surrogate = surrogate;
  out.scores = Matrix(a.size(), b.size());
  const auto product = [&](std::size_t j, std::size_t k) { return a[j] * b[k]; };
  switch (surrogate) {
    case 1:
      for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t k = 0; k < b.size(); ++k) {
          out.scores(j, k) = product(j, k) * cost(j, k);
        }
      }
      break;
    case 2:
      for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t k = 0; k < b.size(); ++k) {
          const double denom = product(j, k) * cost(j, k);
          if (denom == 0.0) throw DegenerateScoreError(j, k);
          out.scores(j, k) = 1.0 / denom;
        }
      }
      break;
    case 3:
      out.scores = SolveKantorovich(a, b, cost, config).plan;
      break;
    case 4:
      if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw InvalidArgument("Importance: lambda must lie in [0, 1]");
      }
      out.lambda = lambda;
      for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t k = 0; k < b.size(); ++k) {
          out.scores(j, k) =
              lambda * product(j, k) + (1.0 - lambda) * cost(j, k);
        }
      }
      break;
    default:
      throw InvalidArgument("Importance: surrogate must be 1, 2, 3 or 4");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pattern enumeration.
//
// Each row lazily lists its column subsets by decreasing score sum. Columns
// are ranked by (score desc, index asc); a subset is a sorted list of ranks,
// and its successors move one rank p to p + 1 when p + 1 is free. Every
// successor scores no more than its parent, so a best-first walk from the top
// subset emits the subsets in order. Rows are combined the same way over the
// vector of per-row ranks; a state only advances rows at or after the last
// row it advanced, which gives every rank vector exactly one parent.

class PatternEnumerator::RowStream {
 public:
  struct Entry {
    double sum;
    std::vector<int> columns;  // ascending
  };

  RowStream(std::span<const double> scores, int budget)
      : scores_(scores.begin(), scores.end()), order_(scores.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int x, int y) { return scores_[x] > scores_[y]; });
    std::vector<int> top(budget);
    std::iota(top.begin(), top.end(), 0);
    Push(std::move(top));
  }

  // Subset at position `rank` of the row order, or nullptr past the end.
  const Entry* At(std::size_t rank) {
    while (produced_.size() <= rank) {
      if (frontier_.empty()) return nullptr;
      Node node = frontier_.top();
      frontier_.pop();
      for (std::size_t i = 0; i < node.ranks.size(); ++i) {
        const int next = node.ranks[i] + 1;
        const bool blocked =
            (i + 1 < node.ranks.size() && node.ranks[i + 1] == next) ||
            next >= static_cast<int>(order_.size());
        if (blocked) continue;
        std::vector<int> child = node.ranks;
        child[i] = next;
        Push(std::move(child));
      }
      produced_.push_back({node.sum, std::move(node.columns)});
    }
    return &produced_[rank];
  }

 private:
  struct Node {
    double sum;
    std::vector<int> ranks;
    std::vector<int> columns;
  };
  struct Later {
    bool operator()(const Node& x, const Node& y) const {
      if (x.sum != y.sum) return x.sum < y.sum;
      return x.columns > y.columns;
    }
  };

  void Push(std::vector<int> ranks) {
    if (!seen_.insert(ranks).second) return;
    Node node;
    node.sum = 0.0;
    for (int r : ranks) node.sum += scores_[order_[r]];
    for (int r : ranks) node.columns.push_back(order_[r]);
    std::sort(node.columns.begin(), node.columns.end());
    node.ranks = std::move(ranks);
    frontier_.push(std::move(node));
  }

  std::vector<double> scores_;
  std::vector<int> order_;
  std::priority_queue<Node, std::vector<Node>, Later> frontier_;
  std::set<std::vector<int>> seen_;
  std::deque<Entry> produced_;
};

struct PatternEnumerator::State {
  std::vector<std::size_t> ranks;
  std::size_t last = 0;
  double sum = 0.0;
};

PatternEnumerator::PatternEnumerator(const Matrix& scores,
                                     std::span<const int> budgets)
    : cols_(scores.cols()) {
  if (budgets.size() != scores.rows()) {
    throw InvalidArgument("PatternEnumerator: one budget per row required");
  }
  for (std::size_t j = 0; j < scores.rows(); ++j) {
    if (budgets[j] < 1) {
      throw InvalidArgument("PatternEnumerator: budgets must be >= 1");
    }
    for (double v : scores.row(j)) {
      if (!std::isfinite(v)) {
        throw InvalidArgument("PatternEnumerator: scores must be finite");
      }
    }
    const int budget = std::min(budgets[j], static_cast<int>(scores.cols()));
    rows_.push_back(std::make_unique<RowStream>(scores.row(j), budget));
  }
  State first;
  first.ranks.assign(rows_.size(), 0);
  for (auto& row : rows_) first.sum += row->At(0)->sum;
  heap_.push_back(std::move(first));
}

PatternEnumerator::~PatternEnumerator() = default;

bool PatternEnumerator::Before(const State& lhs, const State& rhs) const {
  if (lhs.sum != rhs.sum) return lhs.sum > rhs.sum;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const auto& l = rows_[j]->At(lhs.ranks[j])->columns;
    const auto& r = rows_[j]->At(rhs.ranks[j])->columns;
    if (l != r) return l < r;
  }
  return false;
}

std::optional<ScoredPattern> PatternEnumerator::Next() {
  if (heap_.empty()) return std::nullopt;
  const auto later = [this](const State& x, const State& y) {
    return Before(y, x);
  };
  std::pop_heap(heap_.begin(), heap_.end(), later);
  State top = std::move(heap_.back());
  heap_.pop_back();

  ScoredPattern out;
  out.pattern = SupportPattern(rows_.size(), cols_);
  out.score = top.sum;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    for (int c : rows_[j]->At(top.ranks[j])->columns) out.pattern.allow(j, c);
  }

  for (std::size_t i = top.last; i < rows_.size(); ++i) {
    if (rows_[i]->At(top.ranks[i] + 1) == nullptr) continue;
    State child;
    child.ranks = top.ranks;
    ++child.ranks[i];
    child.last = i;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      child.sum += rows_[j]->At(child.ranks[j])->sum;
    }
    heap_.push_back(std::move(child));
    std::push_heap(heap_.begin(), heap_.end(), later);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<SparseResult> SolveRestricted(const DiscreteMeasure& a,
                                            const DiscreteMeasure& b,
                                            const CostMatrix& cost,
                                            const SupportPattern& pattern,
                                            const Matrix* capacity,
                                            const SolverConfig& config) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (pattern.rows() != n || pattern.cols() != m) {
    throw InvalidArgument("SolveRestricted: pattern shape mismatch");
  }
  if (capacity != nullptr && (capacity->rows() != n || capacity->cols() != m)) {
    throw InvalidArgument("SolveRestricted: capacity shape mismatch");
  }
  Matrix upper(n, m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (pattern.allowed(j, k)) {
        upper(j, k) = capacity != nullptr ? (*capacity)(j, k) : kInfinity;
      }
    }
  }
  const LinearProgram lp = BuildTransportLp(a.weights(), b.weights(),
                                            std::span(&cost, 1),
                                            std::span(&upper, 1));
  const LpSolution sol = SolveLp(lp, config);
  if (sol.status == LpStatus::kInfeasible) return std::nullopt;
  if (!sol.optimal()) {
    throw Error("SolveRestricted: LP ended with status " +
                std::string(ToString(sol.status)));
  }
  SparseResult result;
  result.plan = ExtractPlan(sol.values, 0, n, m);
  result.cost = FrobeniusInner(cost, result.plan);
  result.pattern = pattern;
  result.lp_solves = 1;
  return result;
}

SparseResult HeuristicSolve(const SparsityInstance& inst,
                            const ImportanceScore& score,
                            const HeuristicOptions& options) {
  inst.Validate();
  if (options.attempt_cap < 1) {
    throw InvalidArgument("HeuristicSolve: attempt_cap must be >= 1");
  }
  if (score.scores.rows() != inst.a.size() ||
      score.scores.cols() != inst.b.size()) {
    throw InvalidArgument("HeuristicSolve: score matrix shape mismatch");
  }
  const Matrix* capacity = options.capacity ? &*options.capacity : nullptr;
  PatternEnumerator patterns(score.scores, inst.budgets);
  int attempts = 0;
  while (attempts < options.attempt_cap) {
    std::optional<ScoredPattern> next = patterns.Next();
    if (!next) break;
    ++attempts;
    std::optional<SparseResult> result = SolveRestricted(
        inst.a, inst.b, inst.cost, next->pattern, capacity, options.lp);
    if (result) {
      result->lp_solves = attempts;
      return *std::move(result);
    }
  }
  throw HeuristicExhaustedError(attempts);
}

double PatternCount(std::size_t cols, std::span<const int> budgets) {
  double count = 1.0;
  for (int budget : budgets) {
    const std::size_t s = std::min<std::size_t>(budget, cols);
    double binom = 1.0;
    for (std::size_t t = 0; t < s; ++t) {
      binom = binom * static_cast<double>(cols - t) / static_cast<double>(t + 1);
    }
    count *= std::round(binom);
  }
  return count;
}

namespace {

// All size-`s` subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> Combinations(int m, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(s);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = s - 1;
    while (i >= 0 && c[i] == m - s + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int t = i + 1; t < s; ++t) c[t] = c[t - 1] + 1;
  }
  return out;
}

}  // namespace

SparseResult OracleSolve(const SparsityInstance& inst,
                         const OracleOptions& options) {
  inst.Validate();
  const std::size_t n = inst.a.size();
  const std::size_t m = inst.b.size();
  const double count = PatternCount(m, inst.budgets);
  if (count > options.enumeration_cap) {
    throw OracleTooLargeError("OracleSolve: " + std::to_string(count) +
                              " patterns exceed the enumeration cap");
  }
  std::vector<std::vector<std::vector<int>>> choices(n);
  for (std::size_t j = 0; j < n; ++j) {
    choices[j] = Combinations(static_cast<int>(m), inst.EffectiveBudget(j));
  }
  std::optional<SparseResult> best;
  std::vector<std::size_t> odometer(n, 0);
  int tried = 0;
  while (true) {
    SupportPattern pattern(n, m);
    for (std::size_t j = 0; j < n; ++j) {
      for (int c : choices[j][odometer[j]]) pattern.allow(j, c);
    }
    ++tried;
    std::optional<SparseResult> result = SolveRestricted(
        inst.a, inst.b, inst.cost, pattern, nullptr, options.lp);
    if (result && (!best || result->cost < best->cost)) best = std::move(result);

    bool done = true;
    for (std::size_t j = n; j-- > 0;) {
      if (++odometer[j] < choices[j].size()) {
        done = false;
        break;
      }
      odometer[j] = 0;
    }
    if (done) break;
  }
  if (!best) {
    throw InfeasibleInstanceError("OracleSolve: no support pattern is feasible");
  }
  best->lp_solves = tried;
  return *std::move(best);
}

namespace {

// Uniform integer in [0, range) from the raw generator output. Avoids
// std::uniform_int_distribution, whose algorithm differs between standard
// libraries.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t range) {
  const std::uint64_t r = range;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % r;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % r);
}

}  // namespace

std::vector<BaselineSample> RandomBaseline(const SparsityInstance& inst,
                                           int samples, std::uint64_t seed,
                                           const SolverConfig& config) {
  inst.Validate();
  if (samples < 1) throw InvalidArgument("RandomBaseline: samples must be >= 1");
  const std::size_t n = inst.a.size();
  const std::size_t m = inst.b.size();
  std::mt19937_64 rng(seed);
  std::vector<BaselineSample> out;
  out.reserve(samples);
  std::vector<int> columns(m);
  for (int t = 0; t < samples; ++t) {
    SupportPattern pattern(n, m);
    for (std::size_t j = 0; j < n; ++j) {
      std::iota(columns.begin(), columns.end(), 0);
      const std::size_t s = inst.EffectiveBudget(j);
      for (std::size_t i = 0; i < s; ++i) {
        std::swap(columns[i], columns[i + UniformIndex(rng, m - i)]);
        pattern.allow(j, columns[i]);
      }
    }
    std::optional<SparseResult> result =
        SolveRestricted(inst.a, inst.b, inst.cost, pattern, nullptr, config);
    BaselineSample sample;
    sample.pattern = std::move(pattern);
    if (result) sample.cost = result->cost;
    out.push_back(std::move(sample));
  }
  return out;
}

SparsityMetrics ComputeSparsityMetrics(double heuristic_cost,
                                       double oracle_cost,
                                       double heuristic_time,
                                       double oracle_time,
                                       std::span<const BaselineSample> baseline) {
  if (!(oracle_cost > 0.0)) {
    throw InvalidArgument("ComputeSparsityMetrics: oracle cost must be > 0");
  }
  if (!(oracle_time > 0.0)) {
    throw InvalidArgument("ComputeSparsityMetrics: oracle time must be > 0");
  }
  SparsityMetrics metrics;
  metrics.additional_cost_pct =
      100.0 * (heuristic_cost - oracle_cost) / oracle_cost;
  metrics.time_saved_pct = 100.0 * (oracle_time - heuristic_time) / oracle_time;
  int feasible = 0;
  int beaten = 0;
  for (const BaselineSample& s : baseline) {
    if (!s.cost) continue;
    ++feasible;
    if (*s.cost > heuristic_cost) ++beaten;
  }
  if (feasible > 0) metrics.solutions_beat_pct = 100.0 * beaten / feasible;
  return metrics;
}

}  // namespace tpot
