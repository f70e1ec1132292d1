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

#ifndef ZSL_MATRIX_H_
#define ZSL_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace zsl {

// Dense row-major matrix of doubles. Element (i, j) lives at i * cols + j.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }

  double& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  double operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  // out = M^T x, with x of length rows(); out_j accumulates over i ascending.
  void MulTransposed(std::span<const double> x, std::span<double> out) const;
  // out = M x, with x of length cols(); out_i accumulates over j ascending.
  void Mul(std::span<const double> x, std::span<double> out) const;
  // M += scale * a b^T.
  void AddOuter(double scale, std::span<const double> a,
                std::span<const double> b);
  // M += scale * other.
  void Axpy(double scale, const Matrix& other);

  void Scale(double factor);
  double SquaredNorm() const;
  bool AllFinite() const;

  bool operator==(const Matrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace zsl

#endif  // ZSL_MATRIX_H_
