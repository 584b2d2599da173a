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

#ifndef TPOT_OT_H_
#define TPOT_OT_H_

#include <span>
#include <string_view>
#include <vector>

#include "tpot/lp.h"
#include "tpot/matrix.h"
#include "tpot/measures.h"

namespace tpot {

// Two measures are treated as equal-mass when MassMismatch is within this.
inline constexpr double kMassTolerance = 1e-9;

struct OtResult {
  TransportPlan plan;
  double cost = 0.0;
  std::int64_t iterations = 0;
};

// Throws InvalidArgument unless `cost` is rows x cols with finite entries >= 0.
void ValidateCostMatrix(const CostMatrix& cost, std::size_t rows,
                        std::size_t cols, std::string_view what = "cost");

// Throws InvalidArgument if the masses differ by more than kMassTolerance.
void RequireEqualMass(const DiscreteMeasure& a, const DiscreteMeasure& b,
                      std::string_view what);

// LP over one or more stacked n x m plans. Variable (copy, j, k) has index
// copy * n * m + j * m + k, cost costs[copy](j, k) and upper bound
// upper[copy](j, k); an empty `upper` leaves every variable unbounded above.
// Rows 0..n-1 fix the row sums of the summed plan to `a`, rows n..n+m-1 fix
// its column sums to `b`.
LinearProgram BuildTransportLp(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const CostMatrix> costs,
                               std::span<const Matrix> upper = {});

// Reads copy `copy` of an n x m plan out of an LP solution vector.
TransportPlan ExtractPlan(std::span<const double> values, std::size_t copy,
                          std::size_t n, std::size_t m);

// Classic Kantorovich problem: min <C, P> over couplings of a and b.
// Never infeasible when the masses agree.
OtResult SolveKantorovich(const DiscreteMeasure& a, const DiscreteMeasure& b,
                          const CostMatrix& cost,
                          const SolverConfig& config = {});

enum class Metric { kEuclidean, kManhattan };

// Entry (j, k) is d(x_j, y_k)^p.
CostMatrix PairwiseCost(std::span<const Point> xs, std::span<const Point> ys,
                        double p, Metric metric = Metric::kEuclidean);

// p-Wasserstein distance between two probability measures with support
// points. Throws InvalidArgument when points are missing, p < 1, or either
// measure does not have unit mass.
double WassersteinDistance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           double p, Metric metric = Metric::kEuclidean,
                           const SolverConfig& config = {});

}  // namespace tpot

#endif  // TPOT_OT_H_
