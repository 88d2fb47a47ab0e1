// Copyright 2026 The MemSVD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMSVD_DENSE_MATRIX_HPP_
#define MEMSVD_DENSE_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace memsvd {

/// Row-major dense matrix of 64-bit reals. The universal carrier for
/// feature blocks, memory matrices, bases and factor matrices.
///
/// Entries must be finite; the data-taking constructor enforces this.
/// Treat instances as values: once handed out they are never mutated in
/// place by the library, so they are safe to share across threads.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  /// rows x cols matrix of zeros.
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of `data` (row-major, length rows*cols). Throws
  /// std::invalid_argument on a length mismatch or any non-finite entry.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool all_finite() const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace memsvd

#endif  // MEMSVD_DENSE_MATRIX_HPP_
