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

// Brute-force references used only by the tests. None of them share code with
// the library solvers.

#ifndef TPOT_TESTS_ORACLES_H_
#define TPOT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace tpot::testing {

using DenseMatrix = std::vector<std::vector<double>>;

// min c.x s.t. A x = r, 0 <= x <= u by enumerating every vertex: each
// variable sits at 0, at u, or is free, and the free columns must have full
// rank. Exponential; for a handful of variables only.
inline std::optional<double> EnumerateVertices(const std::vector<double>& c,
                                               const DenseMatrix& a,
                                               const std::vector<double>& r,
                                               const std::vector<double>& u) {
  const std::size_t n = c.size();
  const std::size_t rows = a.size();
  std::vector<int> state(n, 0);  // 0: at zero, 1: at upper, 2: free
  std::optional<double> best;
  const auto advance = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (++state[i] < 3) return true;
      state[i] = 0;
    }
    return false;
  };
  do {
    std::vector<std::size_t> free;
    std::vector<double> x(n, 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] == 1) {
        if (std::isinf(u[i])) ok = false;
        x[i] = u[i];
      } else if (state[i] == 2) {
        free.push_back(i);
      }
    }
    if (!ok || free.size() > rows) continue;
    // Augmented system [A_F | r - A_B x_B], eliminated with partial pivots.
    DenseMatrix m(rows, std::vector<double>(free.size() + 1, 0.0));
    for (std::size_t i = 0; i < rows; ++i) {
      double rhs = r[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (state[j] == 1) rhs -= a[i][j] * x[j];
      }
      for (std::size_t f = 0; f < free.size(); ++f) m[i][f] = a[i][free[f]];
      m[i][free.size()] = rhs;
    }
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_of(free.size());
    for (std::size_t col = 0; col < free.size() && ok; ++col) {
      std::size_t best_row = pivot_row;
      for (std::size_t i = pivot_row; i < rows; ++i) {
        if (std::abs(m[i][col]) > std::abs(m[best_row][col])) best_row = i;
      }
      if (best_row >= rows || std::abs(m[best_row][col]) < 1e-12) {
        ok = false;  // rank deficient: not a vertex
        break;
      }
      std::swap(m[pivot_row], m[best_row]);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == pivot_row) continue;
        const double f = m[i][col] / m[pivot_row][col];
        if (f == 0.0) continue;
        for (std::size_t k = col; k <= free.size(); ++k) {
          m[i][k] -= f * m[pivot_row][k];
        }
      }
      pivot_of[col] = pivot_row++;
    }
    if (!ok) continue;
    for (std::size_t i = pivot_row; i < rows; ++i) {
      if (std::abs(m[i][free.size()]) > 1e-9) ok = false;
    }
    if (!ok) continue;
    for (std::size_t f = 0; f < free.size(); ++f) {
      const double v = m[pivot_of[f]][free.size()] / m[pivot_of[f]][f];
      if (v < -1e-9 || v > u[free[f]] + 1e-9) ok = false;
      x[free[f]] = v;
    }
    if (!ok) continue;
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) obj += c[i] * x[i];
    if (!best || obj < *best) best = obj;
  } while (advance());
  return best;
}

// Transport LP written out densely: row sums then column sums, entry (j, k)
// at index j m + k.
inline std::optional<double> BruteForceTransport(
    const std::vector<double>& a, const std::vector<double>& b,
    const DenseMatrix& cost, const DenseMatrix* upper = nullptr) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<double> c(n * m), u(n * m, std::numeric_limits<double>::infinity());
  DenseMatrix rows(n + m, std::vector<double>(n * m, 0.0));
  std::vector<double> rhs(n + m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      c[j * m + k] = cost[j][k];
      if (upper) u[j * m + k] = (*upper)[j][k];
      rows[j][j * m + k] = 1.0;
      rows[n + k][j * m + k] = 1.0;
    }
  }
  for (std::size_t j = 0; j < n; ++j) rhs[j] = a[j];
  for (std::size_t k = 0; k < m; ++k) rhs[n + k] = b[k];
  return EnumerateVertices(c, rows, rhs, u);
}

struct BrutePattern {
  std::vector<std::pair<int, int>> entries;  // sorted (row, col)
  double score = 0.0;
};

// Every pattern with exactly budgets[j] (capped at m) entries in row j, sorted
// by descending score, ties by the lexicographically smaller entry list.
inline std::vector<BrutePattern> AllPatternsSorted(const DenseMatrix& scores,
                                                   const std::vector<int>& budgets) {
  const int n = static_cast<int>(scores.size());
  const int m = static_cast<int>(scores.front().size());
  std::vector<std::vector<std::vector<int>>> row_choices(n);
  for (int j = 0; j < n; ++j) {
    const int s = std::min(budgets[j], m);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (__builtin_popcount(mask) != s) continue;
      std::vector<int> cols;
      for (int k = 0; k < m; ++k) {
        if (mask & (1u << k)) cols.push_back(k);
      }
      row_choices[j].push_back(cols);
    }
  }
  std::vector<BrutePattern> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    BrutePattern p;
    for (int j = 0; j < n; ++j) {
      for (int k : row_choices[j][pick[j]]) {
        p.entries.emplace_back(j, k);
        p.score += scores[j][k];
      }
    }
    out.push_back(std::move(p));
    int j = n - 1;
    while (j >= 0 && ++pick[j] == row_choices[j].size()) pick[j--] = 0;
    if (j < 0) break;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BrutePattern& x, const BrutePattern& y) {
                     if (x.score != y.score) return x.score > y.score;
                     return x.entries < y.entries;
                   });
  return out;
}

inline std::vector<double> RandomWeights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  for (double& v : w) v = u(rng);
  return w;
}

inline std::vector<double> Normalized(std::vector<double> w, double mass = 1.0) {
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v *= mass / s;
  return w;
}

inline DenseMatrix RandomDense(std::mt19937_64& rng, std::size_t n,
                               std::size_t m, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  DenseMatrix out(n, std::vector<double>(m));
  for (auto& row : out) {
    for (double& v : row) v = u(rng);
  }
  return out;
}

}  // namespace tpot::testing

#endif  // TPOT_TESTS_ORACLES_H_
