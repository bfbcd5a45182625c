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
#include <optional>
#include <vector>

#include "wha/exactla/echelon.hpp"
#include "wha/exactla/mat.hpp"

namespace wha::la {

/// Linear subspace of k^n held as reduced row echelon rows.
///
/// The echelon form is canonical, so two subspaces are equal exactly when
/// their rows compare equal.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of k^ambient.
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace full(std::size_t n);
  static Subspace span(const std::vector<Vec>& vectors, std::size_t ambient);
  static Subspace span_sparse(const std::vector<SparseVec>& vectors, std::size_t ambient);
  static Subspace from_builder(const EchelonBuilder& builder);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }

  Vec basis_vector(std::size_t i) const { return to_dense(rows_[i], ambient_); }
  std::vector<Vec> basis() const;
  /// ambient x dim matrix whose columns are the basis vectors.
  Mat basis_matrix() const;

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v with respect to basis(), or nullopt when v is outside.
  std::optional<Vec> coordinates(std::span<const Scalar> v) const;
  /// Sum of coords[i] * basis_vector(i).
  Vec combine(std::span<const Scalar> coords) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVec> rows_;
  std::vector<std::uint32_t> pivots_;
};

/// Null space of a; dim(kernel) + rank = cols.
Subspace kernel(const Mat& a);
/// Null space of a system given as sparse rows over `ncols` unknowns.
Subspace kernel_sparse(const std::vector<SparseVec>& rows, std::size_t ncols);
/// Column space of a.
Subspace image(const Mat& a);

/// Quotient space k^n / R with representatives on the non-pivot coordinates
/// of the echelonized relations.
class Quotient {
 public:
  Quotient() = default;
  Quotient(std::size_t ambient, Subspace relations);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return reps_.size(); }
  const Subspace& relations() const { return relations_; }
  /// Ambient coordinates whose unit vectors form the chosen section basis.
  const std::vector<std::uint32_t>& representatives() const { return reps_; }

  Vec project(std::span<const Scalar> v) const;
  Vec project_sparse(const SparseVec& v) const;
  /// Class of the i-th ambient unit vector.
  SparseVec project_unit(std::size_t i) const;
  /// Ambient representative with the given quotient coordinates.
  Vec section(std::span<const Scalar> coords) const;

  Mat project_matrix() const;
  Mat section_matrix() const;

 private:
  std::size_t ambient_ = 0;
  Subspace relations_;
  std::vector<std::uint32_t> reps_;
  std::vector<std::int32_t> rep_index_;  // ambient coordinate -> quotient coordinate or -1
  std::vector<std::int32_t> pivot_row_;  // ambient coordinate -> relation row or -1
};

Quotient quotient(std::size_t ambient, const Subspace& relations);

}  // namespace wha::la
