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
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wha/exactla/mat.hpp"
#include "wha/exactla/subspace.hpp"

namespace wha {

using la::Mat;
using la::Scalar;
using la::SparseVec;
using la::Subspace;
using la::Vec;

class NotAssociative : public std::invalid_argument {
 public:
  NotAssociative(std::size_t i, std::size_t j, std::size_t k);
  std::size_t i, j, k;
};

class BadUnit : public std::invalid_argument {
 public:
  explicit BadUnit(std::size_t i);
  std::size_t i;
};

class NotClosed : public std::invalid_argument {
 public:
  explicit NotClosed(const std::string& what) : std::invalid_argument(what) {}
};

/// One structure constant: e_i e_j has coefficient `value` on e_k.
struct StructureEntry {
  std::size_t i, j, k;
  Scalar value;
};

/// Finite-dimensional unital associative algebra given by structure constants.
///
/// Products of basis elements are stored sparsely; copies share the
/// immutable data.
class Algebra {
 public:
  Algebra();

  /// Verified construction: throws NotAssociative or BadUnit.
  static Algebra make(std::size_t dim, const std::vector<StructureEntry>& structure, Vec unit,
                      std::vector<std::string> labels = {}, std::uint32_t modulus = 0);
  /// Unverified construction from products[i * dim + j] = e_i e_j.
  static Algebra from_products(std::size_t dim, std::vector<SparseVec> products, Vec unit,
                               std::vector<std::string> labels = {}, std::uint32_t modulus = 0);

  std::size_t dim() const { return d_->dim; }
  const Vec& one() const { return d_->unit; }
  Vec zero() const { return Vec(dim()); }
  Vec basis(std::size_t i) const { return la::unit_vector(dim(), i); }
  const std::vector<std::string>& labels() const { return d_->labels; }
  /// 0 for the rationals, p for F_p.
  std::uint32_t modulus() const { return d_->modulus; }
  /// Integer n as a field element (a residue when the field is F_p).
  Scalar scalar(long long n) const;

  const SparseVec& product(std::size_t i, std::size_t j) const {
    return d_->products[i * d_->dim + j];
  }
  std::vector<StructureEntry> structure() const;

  Vec mul(std::span<const Scalar> x, std::span<const Scalar> y) const;
  Vec mul(std::initializer_list<Vec> factors) const;
  Vec mul_basis_left(std::size_t i, std::span<const Scalar> y) const;
  Vec mul_basis_right(std::span<const Scalar> x, std::size_t j) const;
  /// Matrix of y -> x y.
  Mat left_matrix(std::span<const Scalar> x) const;
  /// Matrix of y -> y x.
  Mat right_matrix(std::span<const Scalar> x) const;
  bool commute(std::span<const Scalar> x, std::span<const Scalar> y) const;
  std::optional<Vec> inverse(std::span<const Scalar> x) const;
  /// Scalar c with x = c * 1, if any.
  std::optional<Scalar> as_scalar(std::span<const Scalar> x) const;

  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> associativity_failure() const;
  std::optional<std::size_t> unit_failure() const;

  bool is_subalgebra(const Subspace& s) const;
  /// Structure on the echelon basis of a subalgebra; throws NotClosed.
  Algebra induced(const Subspace& s) const;

  std::string element_to_string(std::span<const Scalar> x) const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  struct Data {
    std::size_t dim = 0;
    std::vector<SparseVec> products;
    Vec unit;
    std::vector<std::string> labels;
    std::uint32_t modulus = 0;
  };
  explicit Algebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

Algebra ground_field(std::uint32_t modulus = 0);
/// k^n with pointwise product.
Algebra diagonal_algebra(std::size_t n, std::uint32_t modulus = 0);
/// M_n(k) on matrix units, e_{ij} at index i * n + j.
Algebra matrix_algebra(std::size_t n, std::uint32_t modulus = 0);
Algebra opposite(const Algebra& a);
/// a (x) b with e_i (x) f_j at index i * b.dim() + j.
Algebra tensor(const Algebra& a, const Algebra& b);

/// Product of elements of the tensor power A^{(x) legs}, indices in base dim.
SparseVec tensor_mul(const Algebra& a, std::size_t legs, const SparseVec& x, const SparseVec& y);

/// x (x) y as a vector of length x.size() * y.size().
Vec kron_vec(std::span<const Scalar> x, std::span<const Scalar> y);

/// {x : x s = s x for every generator s}.
Subspace centralizer(const Algebra& big, const std::vector<Vec>& generators);
Subspace centralizer(const Algebra& big, const Subspace& sub);
Subspace center(const Algebra& a);

/// Subalgebra generated by the given elements together with 1.
Subspace generated_subalgebra(const Algebra& a, const std::vector<Vec>& generators);

}  // namespace wha
