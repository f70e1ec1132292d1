// Copyright 2026 The zsl Authors.
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

#include "zsl/matrix.h"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace zsl {

Matrix Matrix::Identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void Matrix::MulTransposed(std::span<const double> x,
                           std::span<double> out) const {
  assert(x.size() == rows_ && out.size() == cols_);
  std::fill(out.begin(), out.end(), 0.0);
  for (size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    const double* r = &data_[i * cols_];
    for (size_t j = 0; j < cols_; ++j) out[j] += r[j] * xi;
  }
}

void Matrix::Mul(std::span<const double> x, std::span<double> out) const {
  assert(x.size() == cols_ && out.size() == rows_);
  for (size_t i = 0; i < rows_; ++i) {
    const double* r = &data_[i * cols_];
    double sum = 0.0;
    for (size_t j = 0; j < cols_; ++j) sum += r[j] * x[j];
    out[i] = sum;
  }
}

void Matrix::AddOuter(double scale, std::span<const double> a,
                      std::span<const double> b) {
  assert(a.size() == rows_ && b.size() == cols_);
  for (size_t i = 0; i < rows_; ++i) {
    const double ai = scale * a[i];
    if (ai == 0.0) continue;
    double* r = &data_[i * cols_];
    for (size_t j = 0; j < cols_; ++j) r[j] += ai * b[j];
  }
}

void Matrix::Axpy(double scale, const Matrix& other) {
  assert(other.rows_ == rows_ && other.cols_ == cols_);
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += scale * other.data_[k];
}

void Matrix::Scale(double factor) {
  for (double& v : data_) v *= factor;
}

double Matrix::SquaredNorm() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return sum;
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace zsl
