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

#ifndef TPOT_ERRORS_H_
#define TPOT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpot {

// Bad shapes, out-of-range parameters, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base of all solver-side failures that are not caller mistakes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A measure with zero total mass where positive mass is required.
class DegenerateMeasureError : public Error {
 public:
  using Error::Error;
};

// Surrogate score would divide by zero at (row, col).
class DegenerateScoreError : public Error {
 public:
  DegenerateScoreError(std::size_t row, std::size_t col);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// Necessary-condition violations of a capacity-constrained instance. An empty
// report does not certify feasibility.
struct FeasibilityReport {
  // Sources with positive mass and zero capacity at every step.
  std::vector<std::size_t> row_violations;
  // Sinks with positive demand and zero capacity at every step.
  std::vector<std::size_t> col_violations;
  // Sources (sinks) whose capacity summed over all steps is below their mass.
  // Every row (column) violation also shows up here.
  struct Shortfall {
    std::vector<std::size_t> sources;
    std::vector<std::size_t> sinks;
  } capacity_shortfall;

  bool empty() const {
    return row_violations.empty() && col_violations.empty() &&
           capacity_shortfall.sources.empty() &&
           capacity_shortfall.sinks.empty();
  }
};

class InfeasibleInstanceError : public Error {
 public:
  explicit InfeasibleInstanceError(const std::string& what,
                                   FeasibilityReport report = {})
      : Error(what), report_(std::move(report)) {}
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

class HeuristicExhaustedError : public Error {
 public:
  explicit HeuristicExhaustedError(int attempts);
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class OracleTooLargeError : public Error {
 public:
  using Error::Error;
};

// The hypothesis of a construction does not hold for this input.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

// One step of the combined capacity + sparsity pipeline failed.
class PipelineStepError : public Error {
 public:
  PipelineStepError(std::size_t step, const std::string& cause);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace tpot

#endif  // TPOT_ERRORS_H_
