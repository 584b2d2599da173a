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

#include "tpot/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpot/errors.h"

namespace tpot {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("Matrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw InvalidArgument("Matrix: shape mismatch in +=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  return *this;
}

std::vector<double> RowSums(const Matrix& m) {
  std::vector<double> sums(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (double v : m.row(r)) sums[r] += v;
  }
  return sums;
}

std::vector<double> ColSums(const Matrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) sums[c] += row[c];
  }
  return sums;
}

double FrobeniusInner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("FrobeniusInner: shape mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("MaxAbsDiff: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("MaxAbsDiff: shape mismatch");
  }
  return MaxAbsDiff(a.data(), b.data());
}

int CountNonzerosInRow(const Matrix& m, std::size_t r, double threshold) {
  return static_cast<int>(std::count_if(
      m.row(r).begin(), m.row(r).end(),
      [threshold](double v) { return std::abs(v) > threshold; }));
}

}  // namespace tpot
