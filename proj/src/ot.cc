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

#include "tpot/ot.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpot/errors.h"

namespace tpot {

void ValidateCostMatrix(const CostMatrix& cost, std::size_t rows,
                        std::size_t cols, std::string_view what) {
  if (cost.rows() != rows || cost.cols() != cols) {
    throw InvalidArgument(std::string(what) + " is " +
                          std::to_string(cost.rows()) + "x" +
                          std::to_string(cost.cols()) + ", expected " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t k = 0; k < cols; ++k) {
      const double v = cost(j, k);
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidArgument(std::string(what) + "(" + std::to_string(j) +
                              ", " + std::to_string(k) +
                              ") must be finite and >= 0");
      }
    }
  }
}

void RequireEqualMass(const DiscreteMeasure& a, const DiscreteMeasure& b,
                      std::string_view what) {
  if (MassMismatch(a, b) > kMassTolerance) {
    throw InvalidArgument(std::string(what) + ": total masses differ (" +
                          std::to_string(TotalMass(a)) + " vs " +
                          std::to_string(TotalMass(b)) + ")");
  }
}

LinearProgram BuildTransportLp(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const CostMatrix> costs,
                               std::span<const Matrix> upper) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t copies = costs.size();
  const std::size_t block = n * m;
  if (!upper.empty() && upper.size() != copies) {
    throw InvalidArgument("BuildTransportLp: one upper-bound matrix per cost");
  }
  LinearProgram lp;
  lp.objective.resize(copies * block);
  lp.upper_bounds.assign(copies * block, kInfinity);
  lp.eq_matrix = Matrix(n + m, copies * block, 0.0);
  lp.eq_rhs.assign(a.begin(), a.end());
  lp.eq_rhs.insert(lp.eq_rhs.end(), b.begin(), b.end());
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t v = c * block + j * m + k;
        lp.objective[v] = costs[c](j, k);
        if (!upper.empty()) lp.upper_bounds[v] = upper[c](j, k);
        lp.eq_matrix(j, v) = 1.0;
        lp.eq_matrix(n + k, v) = 1.0;
      }
    }
  }
  return lp;
}

TransportPlan ExtractPlan(std::span<const double> values, std::size_t copy,
                          std::size_t n, std::size_t m) {
  TransportPlan plan(n, m);
  const std::size_t offset = copy * n * m;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      plan(j, k) = values[offset + j * m + k];
    }
  }
  return plan;
}

OtResult SolveKantorovich(const DiscreteMeasure& a, const DiscreteMeasure& b,
                          const CostMatrix& cost, const SolverConfig& config) {
  ValidateCostMatrix(cost, a.size(), b.size());
  RequireEqualMass(a, b, "SolveKantorovich");
  const LinearProgram lp =
      BuildTransportLp(a.weights(), b.weights(), std::span(&cost, 1));
  const LpSolution sol = SolveLp(lp, config);
  if (!sol.optimal()) {
    throw Error("SolveKantorovich: LP ended with status " +
                std::string(ToString(sol.status)));
  }
  OtResult result;
  result.plan = ExtractPlan(sol.values, 0, a.size(), b.size());
  result.cost = FrobeniusInner(cost, result.plan);
  result.iterations = sol.iterations;
  return result;
}

CostMatrix PairwiseCost(std::span<const Point> xs, std::span<const Point> ys,
                        double p, Metric metric) {
  CostMatrix cost(xs.size(), ys.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const Point& x = xs[j];
      const Point& y = ys[k];
      if (x.size() != y.size()) {
        throw InvalidArgument("PairwiseCost: points of different dimension");
      }
      double d = 0.0;
      if (metric == Metric::kEuclidean) {
        for (std::size_t t = 0; t < x.size(); ++t) {
          d += (x[t] - y[t]) * (x[t] - y[t]);
        }
        d = std::sqrt(d);
      } else {
        for (std::size_t t = 0; t < x.size(); ++t) d += std::abs(x[t] - y[t]);
      }
      cost(j, k) = std::pow(d, p);
    }
  }
  return cost;
}

double WassersteinDistance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           double p, Metric metric,
                           const SolverConfig& config) {
  if (!mu.points() || !nu.points()) {
    throw InvalidArgument("WassersteinDistance: both measures need points");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidArgument("WassersteinDistance: p must be >= 1");
  }
  if (std::abs(TotalMass(mu) - 1.0) > kMassTolerance ||
      std::abs(TotalMass(nu) - 1.0) > kMassTolerance) {
    throw InvalidArgument("WassersteinDistance: measures must have mass 1");
  }
  const CostMatrix cost = PairwiseCost(*mu.points(), *nu.points(), p, metric);
  const OtResult ot = SolveKantorovich(mu, nu, cost, config);
  return std::pow(std::max(0.0, ot.cost), 1.0 / p);
}

}  // namespace tpot
