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

#include "wha/exactla/mat.hpp"

namespace wha::la {

/// Incremental row reduction over sparse rows.
///
/// Rows are added one at a time and reduced against the current pivots
/// (leftmost nonzero is the pivot). finish() back-substitutes into reduced
/// row echelon form; the result depends only on the span of the rows added,
/// so equal spans give identical output.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ncols);

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns true if the row enlarged the span.
  bool add(const SparseVec& row);
  bool add_dense(std::span<const Scalar> row);

  /// Leftmost column of the reduced remainder of `row`, if nonzero.
  std::optional<std::uint32_t> leading_after_reduction(const SparseVec& row) const;

  /// Reduced row echelon rows sorted by pivot column; every row has a 1 at its
  /// pivot and zeros in all other pivot columns.
  std::vector<SparseVec> finish() const;

 private:
  SparseVec reduce(const SparseVec& row) const;

  std::size_t ncols_;
  std::vector<SparseVec> rows_;
  std::vector<std::int32_t> pivot_row_;  // column -> index into rows_, or -1
};

/// Rank of a dense matrix.
std::size_t rank(const Mat& a);

/// Exact solution of A x = b with zeros in the non-pivot coordinates, or
/// nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& a, std::span<const Scalar> b);

/// Same as solve() for a system given as sparse augmented rows [a | b]
/// where the right-hand side sits in column `nvars`.
std::optional<Vec> solve_sparse(const std::vector<SparseVec>& augmented_rows, std::size_t nvars);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const Mat& a);

}  // namespace wha::la
