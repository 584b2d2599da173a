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

#include "tpot/errors.h"

namespace tpot {

DegenerateScoreError::DegenerateScoreError(std::size_t row, std::size_t col)
    : Error("importance score divides by zero at entry (" +
            std::to_string(row) + ", " + std::to_string(col) + ")"),
      row_(row),
      col_(col) {}

HeuristicExhaustedError::HeuristicExhaustedError(int attempts)
    : Error("no feasible support pattern within " + std::to_string(attempts) +
            " attempts"),
      attempts_(attempts) {}

PipelineStepError::PipelineStepError(std::size_t step, const std::string& cause)
    : Error("pipeline step " + std::to_string(step) + " failed: " + cause),
      step_(step) {}

}  // namespace tpot
