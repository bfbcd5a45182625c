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

#include <stdexcept>
#include <string>
#include <vector>

#include "wha/report.hpp"
#include "wha/whopf/weak_hopf.hpp"

namespace wha {

class WellDefinednessFailure : public std::runtime_error {
 public:
  explicit WellDefinednessFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Left action of H on A: act[k] is the matrix of a -> e_k . a.
struct ModuleAlgebra {
  WeakHopf H;
  Algebra A;
  std::vector<Mat> act;

  Vec apply(std::span<const Scalar> h, std::span<const Scalar> a) const;
  /// Matrix of a -> h . a.
  Mat action_matrix(std::span<const Scalar> h) const;
};

/// Right comodule structure rho: A -> A (x) H, rho[i] = rho(e_i) with
/// e_a (x) e_h at index a * dim H + h.
struct ComoduleAlgebra {
  WeakHopf H;
  Algebra A;
  std::vector<Vec> rho;

  Vec coact(std::span<const Scalar> a) const;
};

Report verify_module_algebra(const ModuleAlgebra& m);
Report verify_comodule_algebra(const ComoduleAlgebra& c);

/// H_t with h . z = eps_t(h z), on the echelon basis of H_t.
ModuleAlgebra trivial_action(const WeakHopf& h);
/// H* acting on H by phi -> h = h_1 <phi, h_2>.
ModuleAlgebra standard_action(const WeakHopf& h);
/// H acting on C_H(H_s) by h . a = h_1 a S(h_2).
ModuleAlgebra adjoint_action(const WeakHopf& h);

/// {a : h . a = eps_t(h) . a for all h}; throws std::logic_error if the
/// result is not a unital subalgebra.
Subspace invariants(const ModuleAlgebra& m);

/// rho(a) = sum_k (e_k . a) (x) p_k as a comodule algebra over dual(H).
ComoduleAlgebra action_comodule_bridge(const ModuleAlgebra& m);
/// Recovers the action of H from a comodule algebra over H*.
ModuleAlgebra comodule_action_bridge(const ComoduleAlgebra& c, const WeakHopf& h);
/// {a : rho(a) = a^(0) (x) eps_t(a^(1))}.
Subspace coinvariants(const ComoduleAlgebra& c);

/// A #_{H_t} H as a quotient of A (x) H (index a * dim H + h).
struct Smash {
  ModuleAlgebra M;
  la::Quotient quotient;
  Algebra alg;
  Report report;

  /// Class of a # h.
  Vec element(std::span<const Scalar> a, std::span<const Scalar> h) const;
};

/// Builds the smash product, checking that the product is well defined on
/// classes (throws WellDefinednessFailure), associative and unital.
Smash smash(const ModuleAlgebra& m);

/// H* acting on A # H by phi . (a # h) = a # (phi -> h).
ModuleAlgebra smash_dual_action(const Smash& s);

struct DualityDimensions {
  std::size_t double_smash = 0;  // dim (A # H) # H*
  std::size_t endomorphisms = 0;  // dim End(A # H)_A
  std::size_t double_smash_center = 0;
  std::size_t endomorphisms_center = 0;
  Report report;
};

DualityDimensions duality_dimension_check(const ModuleAlgebra& m);

}  // namespace wha
