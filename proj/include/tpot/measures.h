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

#ifndef TPOT_MEASURES_H_
#define TPOT_MEASURES_H_

#include <optional>
#include <vector>

#include "tpot/matrix.h"

namespace tpot {

using Point = std::vector<double>;

// A finite nonnegative combination of Dirac masses. Support points are only
// needed for Wasserstein distances; pure transport problems take cost
// matrices directly.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Throws InvalidArgument on a negative or non-finite weight, or when the
  // number of points differs from the number of weights.
  explicit DiscreteMeasure(std::vector<double> weights,
                           std::optional<std::vector<Point>> points = {});

  const std::vector<double>& weights() const { return weights_; }
  const std::optional<std::vector<Point>>& points() const { return points_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  bool operator==(const DiscreteMeasure&) const = default;

 private:
  std::vector<double> weights_;
  std::optional<std::vector<Point>> points_;
};

double TotalMass(const DiscreteMeasure& m);

// Divides every weight by `c`. Throws InvalidArgument unless c > 0.
DiscreteMeasure Scale(const DiscreteMeasure& m, double c);

// Transport plan with entries a_j * b_k / total_mass(a). Its marginals are a
// and b whenever both measures carry the same mass.
// Throws DegenerateMeasureError if `a` has zero mass.
TransportPlan ProductPlan(const DiscreteMeasure& a, const DiscreteMeasure& b);

// Mass gap normalized by the larger mass, |sum a - sum b| / max(sum a, sum b).
// Zero when both measures are massless.
double MassMismatch(const DiscreteMeasure& a, const DiscreteMeasure& b);

}  // namespace tpot

#endif  // TPOT_MEASURES_H_
