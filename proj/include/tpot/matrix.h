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

#ifndef TPOT_MATRIX_H_
#define TPOT_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tpot {

// Dense row-major matrix of doubles. Used for cost matrices, capacity
// matrices and transport plans.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double factor);

  friend Matrix operator*(Matrix m, double factor) { return m *= factor; }
  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A transport plan: nonnegative n x m matrix of transported mass.
using TransportPlan = Matrix;
// Per-unit transport cost; nonnegative and finite.
using CostMatrix = Matrix;

std::vector<double> RowSums(const Matrix& m);
std::vector<double> ColSums(const Matrix& m);

// Frobenius inner product <a, b>. Shapes must match.
double FrobeniusInner(const Matrix& a, const Matrix& b);

// Largest elementwise absolute difference; shapes must match.
double MaxAbsDiff(const Matrix& a, const Matrix& b);
double MaxAbsDiff(std::span<const double> a, std::span<const double> b);

// Number of entries in row r whose value exceeds `threshold`.
int CountNonzerosInRow(const Matrix& m, std::size_t r, double threshold);

}  // namespace tpot

#endif  // TPOT_MATRIX_H_
