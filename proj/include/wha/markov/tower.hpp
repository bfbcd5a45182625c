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
#include <stdexcept>
#include <string>
#include <vector>

#include "wha/algebra/extension.hpp"
#include "wha/report.hpp"

namespace wha {

/// A certification step of the tower failed.
class TowerFailure : public std::runtime_error {
 public:
  explicit TowerFailure(const std::string& what) : std::runtime_error(what) {}
};

/// One algebra M_k of the Jones tower together with its expectation onto
/// M_{k-1} (onto N when k = 0).
struct TowerLevel {
  Algebra alg;
  CondExpectation down;
  DualBases duals;  // for `down`, elements of alg
  Vec jones;        // e_k; empty at level 0
  Vec trace;        // T_k = T_{k-1} o E
  /// Elements generating alg; used to present the next relative tensor product.
  std::vector<Vec> generators;
  Report report;
};

/// N -> M -> M_1 -> M_2 -> ... with levels[k] = M_k (levels[0] = M).
struct Tower {
  MarkovCertificate base;
  std::vector<TowerLevel> levels;
  Report report;

  std::size_t depth() const { return levels.size() - 1; }
  Scalar lambda() const { return base.lambda(); }
  Scalar lambda_inv() const { return base.lambda_inv; }

  /// Algebra at level k, with k = -1 meaning N.
  const Algebra& algebra(int k) const;
  /// Inclusion matrix M_from -> M_to for from <= to (levels >= -1).
  Mat lift_matrix(int from, int to) const;
  /// Composite expectation M_from -> M_to for to <= from.
  Mat expect_matrix(int from, int to) const;
  /// e_k pushed to level `at` (>= k).
  Vec jones(std::size_t k, std::size_t at) const;
  /// Trace T on level k; T itself on N when k = -1.
  Vec trace(int k) const;
};

/// M_1 = M (x)_N M with e_1 = class of 1 (x) 1, E_M(x e_1 y) = lambda x y and
/// dual bases {lambda^{-1} x_i e_1}, {e_1 y_i}. Throws TowerFailure when the
/// input is not a certified symmetric Markov extension.
TowerLevel basic_construction(const MarkovCertificate& cert);
/// The next level over the top of `t`.
TowerLevel basic_construction(const Tower& t);

/// Iterates the basic construction up to M_depth and verifies idempotency,
/// the braid-like and commutation relations, both Pimsner-Popa relations at
/// every level, trace normalization, and (for depth >= 1) the certification
/// of M_1 / M together with the anti-isomorphism C_M(N) -> C_{M_1}(M).
Tower build_tower(const MarkovCertificate& cert, std::size_t depth);

/// phi(u) = x_i u e_1 y_i from C_M(N) into M_1.
Vec centralizer_map(const Tower& t, std::span<const Scalar> u);

}  // namespace wha
