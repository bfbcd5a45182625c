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
#include <string>
#include <utility>
#include <vector>

#include "wha/algebra/algebra.hpp"
#include "wha/report.hpp"

namespace wha {

/// Either a value or the reason it could not be produced.
template <class T>
struct Outcome {
  std::optional<T> value;
  std::string failure;

  static Outcome ok(T v) { return Outcome{std::move(v), {}}; }
  static Outcome fail(std::string why) { return Outcome{std::nullopt, std::move(why)}; }
  explicit operator bool() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

class InvalidExtension : public std::invalid_argument {
 public:
  explicit InvalidExtension(const std::string& what) : std::invalid_argument(what) {}
};

/// Unital algebra inclusion small -> big, embed is big.dim() x small.dim().
struct Inclusion {
  Algebra small;
  Algebra big;
  Mat embed;

  /// Verified construction; throws InvalidExtension.
  static Inclusion make(Algebra small, Algebra big, Mat embed);
  std::optional<std::string> violation() const;

  Vec push(std::span<const Scalar> n) const { return embed.apply(n); }
  Subspace image() const { return la::image(embed); }
  /// Images of the small basis.
  std::vector<Vec> image_basis() const;
};

/// Bimodule map E: big -> small with E o embed = id.
struct CondExpectation {
  Inclusion incl;
  Mat map;  // small.dim() x big.dim()

  static CondExpectation make(Inclusion incl, Mat map);
  std::optional<std::string> violation() const;

  Vec apply(std::span<const Scalar> x) const { return map.apply(x); }
  /// E(x) viewed inside the big algebra.
  Vec project(std::span<const Scalar> x) const { return incl.push(map.apply(x)); }
  const Algebra& big() const { return incl.big; }
  const Algebra& small() const { return incl.small; }
};

/// Dual bases E(m x_i) y_i = m = x_i E(y_i m), elements of the big algebra.
struct DualBases {
  std::vector<Vec> xs;
  std::vector<Vec> ys;
  /// Set when sum x_i y_i is a nonzero multiple of 1.
  std::optional<Scalar> lambda_inv;

  std::size_t size() const { return xs.size(); }
};

/// k -> A with E(x) = t(x) 1; requires t(1) = 1.
CondExpectation scalar_extension(const Algebra& a, std::span<const Scalar> t);

/// First basis element m violating either dual-basis identity, if any.
std::optional<std::string> dual_bases_violation(const CondExpectation& e, const DualBases& db);

/// Solves for dual bases with every x_i, y_i in `within` (the whole big
/// algebra when omitted). The x_i run over the echelon basis of `within` and
/// the y_i come from the canonical solution of the linear system; if a
/// solution with y_i x_i = lambda^{-1} 1 exists it is preferred. Pairs with
/// y_i = 0 are dropped.
Outcome<DualBases> find_dual_bases(const CondExpectation& e,
                                   const std::optional<Subspace>& within = std::nullopt);

/// The map x -> (E(x e_j))_j has trivial kernel.
bool is_left_nondegenerate(const CondExpectation& e);

struct SymmetryResult {
  bool symmetric = true;
  std::string witness;
};

/// E(u x) = E(x u) for u in a basis of `u_space` and x in the basis of big.
SymmetryResult is_symmetric(const CondExpectation& e, const Subspace& u_space);

/// f = sum F_ij e_i (x) e_j with a f = f a, mu(f) = 1.
struct SeparabilityElement {
  Mat coeffs;
  bool symmetric = false;
  /// The defining system has a single solution.
  bool unique = false;

  /// f as a vector in A (x) A.
  Vec tensor() const;
  /// Pairs (e_i, sum_j F_ij e_j) whose tensors add up to f.
  std::vector<std::pair<Vec, Vec>> terms() const;
};

/// Symmetric separability element, or failure when the algebra is not
/// Kanzaki separable.
Outcome<SeparabilityElement> kanzaki_element(const Algebra& a);
/// Separability element without the symmetry requirement.
Outcome<SeparabilityElement> separability_element(const Algebra& a);

/// Dual bases of a linear functional t on an algebra: t(a x_i) y_i = a.
Outcome<DualBases> functional_dual_bases(const Algebra& a, std::span<const Scalar> t);

/// M (x)_N M as a quotient of M (x) M (index i * dim + j).
class RelativeTensor {
 public:
  RelativeTensor() = default;
  /// `generators` generate the small algebra; its basis is used when empty.
  RelativeTensor(const Inclusion& incl, const std::vector<Vec>& generators = {});

  const la::Quotient& quotient() const { return q_; }
  std::size_t dim() const { return q_.dim(); }
  std::size_t factor_dim() const { return n_; }
  /// Class of x (x) y.
  Vec pure(std::span<const Scalar> x, std::span<const Scalar> y) const;
  /// Class of sum_i x_i (x) y_i.
  Vec sum(const std::vector<Vec>& xs, const std::vector<Vec>& ys) const;

 private:
  std::size_t n_ = 0;
  la::Quotient q_;
};

/// Everything verified about a Markov extension. Each flag is set only when
/// its defining identity held on a full basis.
struct MarkovCertificate {
  CondExpectation expectation;
  DualBases duals;
  Vec trace;  // on the small algebra
  Scalar lambda_inv;
  Subspace centralizer;  // U = C_M(N) inside M
  bool frobenius = false;
  bool strongly_separable = false;
  bool markov = false;
  bool symmetric = false;
  bool symmetric_product = false;
  bool weakly_irreducible = false;
  std::optional<SeparabilityElement> kanzaki_u;
  std::optional<DualBases> trace_duals_u;  // dual bases of T_0 on U, elements of M
  Report report;

  bool certified() const {
    return frobenius && strongly_separable && markov && symmetric && symmetric_product &&
           weakly_irreducible;
  }
  Scalar lambda() const { return lambda_inv.inverse(); }
};

MarkovCertificate certify_markov(const CondExpectation& e, const DualBases& duals,
                                 std::span<const Scalar> trace);

/// x_i u (x) y_i = x_i (x) u y_i in M (x)_N M for every u in a basis of U.
bool casimir_shift_check(const MarkovCertificate& cert, const RelativeTensor& tensor);
bool casimir_shift_check(const MarkovCertificate& cert);

}  // namespace wha
