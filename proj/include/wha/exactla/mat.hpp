// Copyright 2026 The wha Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wha/exactla/scalar.hpp"

namespace wha::la {

using Vec = std::vector<Scalar>;

/// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

Vec zeros(std::size_t n);
Vec unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
/// y += a * x
void axpy(const Scalar& a, std::span<const Scalar> x, std::span<Scalar> y);
Vec scaled(const Scalar& a, std::span<const Scalar> x);
Vec add(std::span<const Scalar> x, std::span<const Scalar> y);
Vec sub(std::span<const Scalar> x, std::span<const Scalar> y);
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y);
SparseVec to_sparse(std::span<const Scalar> v);
Vec to_dense(const SparseVec& v, std::size_t n);
std::string to_string(std::span<const Scalar> v);

/// Dense row-major matrix over an exact field.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat from_columns(const std::vector<Vec>& columns, std::size_t rows);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Scalar> v);

  Mat transpose() const;
  Vec apply(std::span<const Scalar> x) const;
  bool is_zero() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);

}  // namespace wha::la
