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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wha/algebra/algebra.hpp"
#include "wha/report.hpp"

namespace wha {

class InvalidWeakHopf : public std::invalid_argument {
 public:
  explicit InvalidWeakHopf(const std::string& what) : std::invalid_argument(what) {}
};

/// The two characterizations of a counital subalgebra disagree.
class CounitalInconsistency : public std::runtime_error {
 public:
  explicit CounitalInconsistency(const std::string& what) : std::runtime_error(what) {}
};

/// The Hopf criteria (Delta(1) = 1 (x) 1, multiplicative counit, trivial
/// target subalgebra) disagree.
class EquivalenceViolation : public std::logic_error {
 public:
  explicit EquivalenceViolation(const std::string& what) : std::logic_error(what) {}
};

/// Algebra with comultiplication, counit and antipode on the same basis.
///
/// delta[k] is Delta(e_k) in H (x) H with e_i (x) e_j at index i * dim + j.
/// S is the matrix of the antipode acting on coordinate columns.
struct WeakHopf {
  Algebra alg;
  std::vector<SparseVec> delta;
  Vec eps;
  Mat S;

  /// Checks shapes only; the axioms are left to verify_axioms.
  static WeakHopf make(Algebra alg, std::vector<SparseVec> delta, Vec eps, Mat S);

  std::size_t dim() const { return alg.dim(); }
  /// Delta(x) as a dense vector of length dim^2.
  Vec coproduct(std::span<const Scalar> x) const;
  Scalar counit(std::span<const Scalar> x) const { return la::dot(eps, x); }
  Vec antipode(std::span<const Scalar> x) const { return S.apply(x); }
  /// dim x dim^2 matrix of Delta.
  Mat delta_matrix() const;

  /// (eps (x) id)(Delta(1)(h (x) 1))
  Vec eps_t(std::span<const Scalar> h) const;
  /// (id (x) eps)((1 (x) h)Delta(1))
  Vec eps_s(std::span<const Scalar> h) const;

  friend bool operator==(const WeakHopf& a, const WeakHopf& b);
};

/// Every axiom checked separately on full basis tuples.
Report verify_axioms(const WeakHopf& h);

/// Homogeneous antipode equations: S' with h1 S'(h2) = 0 and S'(h1) h2 = 0,
/// together with S'(h) = eps_s(h1) S'(h2) when `with_convolution`. Vectors
/// hold S'(e_j)_i at index i * dim + j.
Subspace antipode_equation_kernel(const WeakHopf& h, bool with_convolution);

struct CounitalData {
  Mat eps_t;
  Mat eps_s;
  Subspace Ht;
  Subspace Hs;
  Vec e_t;  // (S (x) id)Delta(1)
  Vec e_s;  // (id (x) S)Delta(1)
  Report report;
};

/// Counital maps and subalgebras with their consistency checks; throws
/// CounitalInconsistency when the image of eps_t differs from the span of the
/// right legs of Delta(1).
CounitalData counital(const WeakHopf& h);

/// Structure of h on the basis whose j-th vector is column j of p; throws
/// std::invalid_argument when p is singular.
WeakHopf transport(const WeakHopf& h, const Mat& p);

/// Dual weak Hopf algebra on the dual basis (labels prefixed with "p_").
WeakHopf dual(const WeakHopf& h);

struct IntegralSpaces {
  Subspace left;
  Subspace right;
  Subspace two_sided;
  std::optional<Vec> normalized_left;
  /// A normalized left integral exists exactly when the algebra is separable.
  bool maschke_consistent = false;
};

IntegralSpaces integrals(const WeakHopf& h);

/// True iff Delta(1) = 1 (x) 1; throws EquivalenceViolation when the other
/// two Hopf criteria disagree.
bool is_hopf(const WeakHopf& h);

/// Product of dense elements of the tensor power A^{(x) legs}.
Vec tensor_product_dense(const Algebra& a, std::size_t legs, std::span<const Scalar> x,
                         std::span<const Scalar> y);

}  // namespace wha
