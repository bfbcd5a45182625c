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

#include "wha/exactla/subspace.hpp"

#include <algorithm>

namespace wha::la {

Subspace Subspace::full(std::size_t n) {
  Subspace s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.rows_.push_back(SparseVec{{static_cast<std::uint32_t>(i), Scalar(1)}});
    s.pivots_.push_back(static_cast<std::uint32_t>(i));
  }
  return s;
}

Subspace Subspace::from_builder(const EchelonBuilder& builder) {
  Subspace s(builder.ncols());
  s.rows_ = builder.finish();
  for (const auto& r : s.rows_) s.pivots_.push_back(r.front().first);
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& vectors, std::size_t ambient) {
  EchelonBuilder b(ambient);
  for (const auto& v : vectors) b.add_dense(v);
  return from_builder(b);
}

Subspace Subspace::span_sparse(const std::vector<SparseVec>& vectors, std::size_t ambient) {
  EchelonBuilder b(ambient);
  for (const auto& v : vectors) b.add(v);
  return from_builder(b);
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  out.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(basis_vector(i));
  return out;
}

Mat Subspace::basis_matrix() const {
  Mat m(ambient_, rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j)
    for (const auto& [i, v] : rows_[j]) m(i, j) = v;
  return m;
}

std::optional<Vec> Subspace::coordinates(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw DimensionMismatch("coordinates: ambient mismatch");
  // In reduced echelon form the coordinate on row r is the entry at its pivot.
  Vec coords(rows_.size());
  Vec rest(v.begin(), v.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    coords[r] = v[pivots_[r]];
    if (coords[r].is_zero()) continue;
    for (const auto& [c, x] : rows_[r]) rest[c] -= coords[r] * x;
  }
  if (!is_zero(rest)) return std::nullopt;
  return coords;
}

bool Subspace::contains(std::span<const Scalar> v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

Vec Subspace::combine(std::span<const Scalar> coords) const {
  if (coords.size() != rows_.size()) throw DimensionMismatch("combine: coordinate count");
  Vec v(ambient_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (coords[r].is_zero()) continue;
    for (const auto& [c, x] : rows_[r]) v[c] += coords[r] * x;
  }
  return v;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("sum: ambient mismatch");
  EchelonBuilder b(ambient_);
  for (const auto& r : rows_) b.add(r);
  for (const auto& r : other.rows_) b.add(r);
  return from_builder(b);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("intersect: ambient mismatch");
  // Solve sum a_i u_i - sum b_j v_j = 0 and map the a-part back.
  std::size_t n = dim() + other.dim();
  Mat sys(ambient_, n);
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& [c, x] : rows_[i]) sys(c, i) = x;
  for (std::size_t j = 0; j < other.dim(); ++j)
    for (const auto& [c, x] : other.rows_[j]) sys(c, dim() + j) = -x;
  Subspace k = kernel(sys);
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < k.dim(); ++i) {
    Vec coeff = k.basis_vector(i);
    vs.push_back(combine(std::span<const Scalar>(coeff).subspan(0, dim())));
  }
  return span(vs, ambient_);
}

Subspace kernel_sparse(const std::vector<SparseVec>& rows, std::size_t ncols) {
  EchelonBuilder b(ncols);
  for (const auto& r : rows) b.add(r);
  auto rref = b.finish();
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& r : rref) is_pivot[r.front().first] = true;
  std::vector<SparseVec> vs;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    for (const auto& r : rref) {
      for (const auto& [c, x] : r)
        if (c == f) v.emplace_back(r.front().first, -x);
    }
    v.emplace_back(static_cast<std::uint32_t>(f), Scalar(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    vs.push_back(std::move(v));
  }
  return Subspace::span_sparse(vs, ncols);
}

Subspace kernel(const Mat& a) {
  std::vector<SparseVec> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(to_sparse(a.row(i)));
  return kernel_sparse(rows, a.cols());
}

Subspace image(const Mat& a) {
  EchelonBuilder b(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) b.add_dense(a.column(j));
  return Subspace::from_builder(b);
}

Quotient::Quotient(std::size_t ambient, Subspace relations)
    : ambient_(ambient),
      relations_(std::move(relations)),
      rep_index_(ambient, -1),
      pivot_row_(ambient, -1) {
  if (relations_.ambient() != ambient)
    throw DimensionMismatch("quotient: relations live in a different ambient space");
  const auto& piv = relations_.pivots();
  for (std::size_t r = 0; r < piv.size(); ++r) pivot_row_[piv[r]] = static_cast<std::int32_t>(r);
  for (std::size_t i = 0; i < ambient; ++i) {
    if (pivot_row_[i] >= 0) continue;
    rep_index_[i] = static_cast<std::int32_t>(reps_.size());
    reps_.push_back(static_cast<std::uint32_t>(i));
  }
}

SparseVec Quotient::project_unit(std::size_t i) const {
  SparseVec out;
  if (rep_index_.at(i) >= 0) {
    out.emplace_back(static_cast<std::uint32_t>(rep_index_[i]), Scalar(1));
    return out;
  }
  // e_i = row - (row - e_i); the class of e_i is minus the non-pivot tail.
  const auto& row = relations_.rows()[static_cast<std::size_t>(pivot_row_[i])];
  for (const auto& [c, x] : row) {
    if (c == i) continue;
    out.emplace_back(static_cast<std::uint32_t>(rep_index_[c]), -x);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Vec Quotient::project(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw DimensionMismatch("project: ambient mismatch");
  Vec q(reps_.size());
  for (std::size_t i = 0; i < ambient_; ++i) {
    if (v[i].is_zero()) continue;
    if (rep_index_[i] >= 0) {
      q[static_cast<std::size_t>(rep_index_[i])] += v[i];
      continue;
    }
    for (const auto& [c, x] : relations_.rows()[static_cast<std::size_t>(pivot_row_[i])]) {
      if (c == i) continue;
      q[static_cast<std::size_t>(rep_index_[c])] -= v[i] * x;
    }
  }
  return q;
}

Vec Quotient::project_sparse(const SparseVec& v) const {
  Vec q(reps_.size());
  for (const auto& [i, val] : v) {
    if (rep_index_.at(i) >= 0) {
      q[static_cast<std::size_t>(rep_index_[i])] += val;
      continue;
    }
    for (const auto& [c, x] : relations_.rows()[static_cast<std::size_t>(pivot_row_[i])]) {
      if (c == i) continue;
      q[static_cast<std::size_t>(rep_index_[c])] -= val * x;
    }
  }
  return q;
}

Vec Quotient::section(std::span<const Scalar> coords) const {
  if (coords.size() != reps_.size()) throw DimensionMismatch("section: coordinate count");
  Vec v(ambient_);
  for (std::size_t k = 0; k < reps_.size(); ++k) v[reps_[k]] = coords[k];
  return v;
}

Mat Quotient::project_matrix() const {
  Mat p(reps_.size(), ambient_);
  for (std::size_t i = 0; i < ambient_; ++i)
    for (const auto& [k, x] : project_unit(i)) p(k, i) = x;
  return p;
}

Mat Quotient::section_matrix() const {
  Mat s(ambient_, reps_.size());
  for (std::size_t k = 0; k < reps_.size(); ++k) s(reps_[k], k) = 1;
  return s;
}

Quotient quotient(std::size_t ambient, const Subspace& relations) {
  return Quotient(ambient, relations);
}

}  // namespace wha::la
