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

#include "wha/exactla/echelon.hpp"

#include <algorithm>

namespace wha::la {

namespace {

// r := r + a * s, both sorted sparse rows.
SparseVec sparse_axpy(const SparseVec& r, const Scalar& a, const SparseVec& s) {
  SparseVec out;
  out.reserve(r.size() + s.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || s[j].first < r[i].first) {
      out.emplace_back(s[j].first, a * s[j].second);
      ++j;
    } else {
      Scalar v = r[i].second + a * s[j].second;
      if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Scalar* find_entry(const SparseVec& r, std::uint32_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it != r.end() && it->first == col) return &it->second;
  return nullptr;
}

}  // namespace

EchelonBuilder::EchelonBuilder(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

SparseVec EchelonBuilder::reduce(const SparseVec& row) const {
  // Rows are kept fully reduced, so one pass over the pivot entries of the
  // input suffices: subtracting a reduced row only touches non-pivot columns.
  SparseVec acc = row;
  for (const auto& [col, val] : row) {
    if (col >= ncols_) throw DimensionMismatch("echelon: column index out of range");
    std::int32_t r = pivot_row_[col];
    if (r < 0) continue;
    const Scalar* cur = find_entry(acc, col);
    if (!cur) continue;
    Scalar factor = -*cur;
    acc = sparse_axpy(acc, factor, rows_[static_cast<std::size_t>(r)]);
  }
  return acc;
}

bool EchelonBuilder::add(const SparseVec& row) {
  SparseVec r = reduce(row);
  if (r.empty()) return false;
  std::uint32_t p = r.front().first;
  Scalar inv = r.front().second.inverse();
  for (auto& e : r) e.second *= inv;
  for (auto& other : rows_) {
    const Scalar* hit = find_entry(other, p);
    if (!hit) continue;
    Scalar factor = -*hit;
    other = sparse_axpy(other, factor, r);
  }
  pivot_row_[p] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

bool EchelonBuilder::add_dense(std::span<const Scalar> row) {
  if (row.size() != ncols_) throw DimensionMismatch("echelon: row length mismatch");
  return add(to_sparse(row));
}

std::optional<std::uint32_t> EchelonBuilder::leading_after_reduction(const SparseVec& row) const {
  SparseVec r = reduce(row);
  if (r.empty()) return std::nullopt;
  return r.front().first;
}

std::vector<SparseVec> EchelonBuilder::finish() const {
  std::vector<SparseVec> out = rows_;
  std::sort(out.begin(), out.end(),
            [](const SparseVec& a, const SparseVec& b) { return a.front().first < b.front().first; });
  return out;
}

std::size_t rank(const Mat& a) {
  EchelonBuilder b(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) b.add_dense(a.row(i));
  return b.rank();
}

std::optional<Vec> solve_sparse(const std::vector<SparseVec>& augmented_rows, std::size_t nvars) {
  EchelonBuilder b(nvars + 1);
  for (const auto& r : augmented_rows) {
    b.add(r);
  }
  Vec x(nvars);
  for (const auto& r : b.finish()) {
    std::uint32_t p = r.front().first;
    if (p == nvars) return std::nullopt;
    const Scalar* rhs = find_entry(r, static_cast<std::uint32_t>(nvars));
    if (rhs) x[p] = *rhs;
  }
  return x;
}

std::optional<Vec> solve(const Mat& a, std::span<const Scalar> b) {
  if (b.size() != a.rows())
    throw DimensionMismatch("solve: right-hand side has length " + std::to_string(b.size()) +
                            ", expected " + std::to_string(a.rows()));
  std::vector<SparseVec> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseVec r = to_sparse(a.row(i));
    if (!b[i].is_zero()) r.emplace_back(static_cast<std::uint32_t>(a.cols()), b[i]);
    rows.push_back(std::move(r));
  }
  return solve_sparse(rows, a.cols());
}

std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse: matrix is not square");
  std::size_t n = a.rows();
  EchelonBuilder b(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec r = to_sparse(a.row(i));
    r.emplace_back(static_cast<std::uint32_t>(n + i), Scalar(1));
    b.add(r);
  }
  auto rows = b.finish();
  if (rows.size() != n) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].front().first != i) return std::nullopt;
    for (const auto& [c, v] : rows[i]) {
      if (c < n) {
        if (c != i) return std::nullopt;
        continue;
      }
      inv(i, c - n) = v;
    }
  }
  return inv;
}

}  // namespace wha::la
