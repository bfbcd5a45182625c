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

#include "wha/exactla/mat.hpp"

#include <sstream>

namespace wha::la {

Vec zeros(std::size_t n) { return Vec(n); }

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void axpy(const Scalar& a, std::span<const Scalar> x, std::span<Scalar> y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Vec scaled(const Scalar& a, std::span<const Scalar> x) {
  Vec r(x.size());
  if (a.is_zero()) return r;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) r[i] = a * x[i];
  return r;
}

Vec add(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw DimensionMismatch("add: length mismatch");
  Vec r(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!y[i].is_zero()) r[i] += y[i];
  return r;
}

Vec sub(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw DimensionMismatch("sub: length mismatch");
  Vec r(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!y[i].is_zero()) r[i] -= y[i];
  return r;
}

Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  return s;
}

SparseVec to_sparse(std::span<const Scalar> v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

Vec to_dense(const SparseVec& v, std::size_t n) {
  Vec d(n);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

std::string to_string(std::span<const Scalar> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_columns(const std::vector<Vec>& columns, std::size_t rows) {
  Mat m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::column(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Mat::set_column(std::size_t j, std::span<const Scalar> v) {
  if (v.size() != rows_) throw DimensionMismatch("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Mat::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_)
    throw DimensionMismatch("apply: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                            " matrix on vector of length " + std::to_string(x.size()));
  Vec y(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, j);
      if (!a.is_zero()) y[i] += a * x[j];
    }
  }
  return y;
}

bool Mat::is_zero() const { return la::is_zero(data_); }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
  Mat c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum");
  Mat c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference");
  Mat c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
    }
  return k;
}

}  // namespace wha::la
