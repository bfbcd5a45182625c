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

#include "wha/markov/depth2.hpp"
#include "wha/whopf/weak_hopf.hpp"

namespace wha {

/// Everything computed on a depth-2 tower before the weak Hopf structure.
struct Depth2Context {
  Frame frame;
  CentralizerLattice lattice;
  Depth2Data d2;
  Expectations exps;
  PairingData pairing;
};

/// B = C_{M_2}(M) with Delta from <a a', b> = <a, b_1><a', b_2>,
/// eps(b) = <1, b> and S from <a, b> = lambda^{-2} T(S(b) e_1 e_2 w a), and
/// A = C_{M_1}(N) as the dual of B transported through the gram matrix.
/// Both live on the echelon bases of their subspaces of M_2.
struct DerivedWeakHopf {
  Depth2Context ctx;
  WeakHopf B_whopf;
  WeakHopf A_whopf;
  Mat S_inv;
  Vec g;     // S(w^{-1}) w
  Vec haar;  // e_2 S^{-1}(e_2) = E_M(w^{-1}) e_2 w
  Report report;

  /// Element of M_2 with the given coordinates on the basis of B (resp. A).
  Vec b_element(std::span<const Scalar> coords) const { return ctx.lattice.B.combine(coords); }
  Vec a_element(std::span<const Scalar> coords) const { return ctx.lattice.A.combine(coords); }
};

/// Builds both weak Hopf algebras and verifies their axioms together with
/// every identity relating Delta, eps and S to the tower. Failures are
/// recorded in `report`; structural failures (singular gram) throw.
DerivedWeakHopf derive_whopf(Depth2Context ctx);

}  // namespace wha
