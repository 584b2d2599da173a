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

#include "tpot/measures.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpot/errors.h"

namespace tpot {

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights,
                                 std::optional<std::vector<Point>> points)
    : weights_(std::move(weights)), points_(std::move(points)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw InvalidArgument("DiscreteMeasure: weight " + std::to_string(i) +
                            " must be finite and >= 0");
    }
  }
  if (points_ && points_->size() != weights_.size()) {
    throw InvalidArgument("DiscreteMeasure: " +
                          std::to_string(points_->size()) + " points for " +
                          std::to_string(weights_.size()) + " weights");
  }
}

double TotalMass(const DiscreteMeasure& m) {
  return std::accumulate(m.weights().begin(), m.weights().end(), 0.0);
}

DiscreteMeasure Scale(const DiscreteMeasure& m, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgument("Scale: factor must be a positive finite number");
  }
  std::vector<double> w = m.weights();
  for (double& v : w) v /= c;
  return DiscreteMeasure(std::move(w), m.points());
}

TransportPlan ProductPlan(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const double mass = TotalMass(a);
  if (!(mass > 0.0)) {
    throw DegenerateMeasureError("ProductPlan: source measure has zero mass");
  }
  TransportPlan plan(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      plan(j, k) = a[j] * b[k] / mass;
    }
  }
  return plan;
}

double MassMismatch(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const double ma = TotalMass(a);
  const double mb = TotalMass(b);
  const double scale = std::max(ma, mb);
  if (scale == 0.0) return 0.0;
  return std::abs(ma - mb) / scale;
}

}  // namespace tpot
