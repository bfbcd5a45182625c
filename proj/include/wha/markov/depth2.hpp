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
#include <utility>
#include <vector>

#include "wha/markov/tower.hpp"

namespace wha {

/// The tower up to M_2 with everything expressed in the coordinates of M_2.
/// Expectations are endomorphisms of M_2: EM1 = E_{M_1}, EM = E_M o E_{M_1}
/// (equal to E_M on M_1) and EN = E o E_M o E_{M_1}.
struct Frame {
  Algebra M2;
  Mat lift_N, lift_M, lift_M1;  // into M_2
  Mat EM1, EM, EN;
  Mat to_M1, to_M;  // coordinates of elements of M_1 (resp. M)
  Vec trace;        // T_2
  Mat trace_form;   // T_2(e_i e_j)
  Vec e1, e2;
  Scalar lambda, lambda_inv;

  Scalar T(std::span<const Scalar> x) const { return la::dot(trace, x); }
  /// T(x y).
  Scalar T(std::span<const Scalar> x, std::span<const Scalar> y) const;
  Vec mul(std::span<const Scalar> x, std::span<const Scalar> y) const { return M2.mul(x, y); }
  Vec mul(std::initializer_list<Vec> xs) const { return M2.mul(xs); }
};

/// Requires depth >= 2.
Frame make_frame(const Tower& t);

/// Centralizers and tower algebras as subspaces of M_2:
/// U = C_M(N), V = C_{M_1}(M), W = C_{M_2}(M_1), A = C_{M_1}(N),
/// B = C_{M_2}(M), C = C_{M_2}(N).
struct CentralizerLattice {
  Subspace N, M, M1;
  Subspace U, V, W, A, B, C;
  Report report;
};

CentralizerLattice centralizers(const Tower& t, const Frame& f);

/// Dual bases of E_M inside A and of E_{M_1} inside B (M_2 coordinates).
struct Depth2Data {
  std::vector<Vec> zs, ws;
  std::vector<Vec> us, vs;
};

/// Fails, naming the offending half, when either expectation lacks dual bases
/// in the corresponding centralizer.
Outcome<Depth2Data> depth2_check(const Tower& t, const Frame& f, const CentralizerLattice& lat);

/// E_A = E_{M_1} on C and E_B(c) = T(c u_j c_i) d_i v_j, where c_i, d_i are the
/// images under phi of dual bases a_i, b_i of T_0 on U.
struct Expectations {
  Mat EA, EB;
  Mat EB_alt;  // c -> u_j c_i T(d_i v_j c)
  std::vector<Vec> cs, ds;
  Report report;
};

Expectations conditional_expectations(const Tower& t, const Frame& f, const CentralizerLattice& lat,
                                      const Depth2Data& d2);

class SingularGram : public std::runtime_error {
 public:
  explicit SingularGram(const std::string& what) : std::runtime_error(what) {}
};

/// <a, b> = lambda^{-2} T(a e_2 e_1 w b) with w = [f^1 T(f^2)]^{-1} for the
/// symmetric separability element f of V.
struct PairingData {
  std::vector<std::pair<Vec, Vec>> f;  // terms of f in M_2
  Vec w, w_inv;
  Mat gram;      // dim A x dim B on the echelon bases
  Mat gram_alt;  // <a_i, b_j>' = lambda^{-2} T(b_j e_1 e_2 w a_i)
  Report report;

  Scalar pair(const Frame& fr, std::span<const Scalar> a, std::span<const Scalar> b) const;
};

/// Throws SingularGram if either pairing is degenerate.
PairingData pairing(const Frame& f, const CentralizerLattice& lat);

/// dim (X (x)_Z Y) for subspaces of M_2 with X Z in X and Z Y in Y.
std::size_t balanced_tensor_dim(const Algebra& alg, const Subspace& x, const Subspace& z,
                                const Subspace& y);

}  // namespace wha
