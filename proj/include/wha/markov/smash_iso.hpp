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

#include "wha/action/action.hpp"
#include "wha/markov/derived.hpp"

namespace wha {

/// An action of a derived weak Hopf algebra on a tower level, in the
/// coordinates of that level.
struct TowerAction {
  ModuleAlgebra module;
  Subspace invariants;
  Report report;
};

/// b . x = lambda^{-1} E_{M_1}(b x e_2) on M_1.
TowerAction action_B_on_M1(const Tower& t, const DerivedWeakHopf& dw);
/// a . m = a_1 m S(a_2) on M.
TowerAction action_A_on_M(const Tower& t, const DerivedWeakHopf& dw);

/// The smash product of an action together with the multiplication map into
/// the next tower level.
struct SmashIso {
  Smash smash;
  Mat map;      // smash coordinates -> target coordinates
  Mat inverse;  // target coordinates -> smash coordinates
  Report report;
};

/// x # b -> x b from M_1 # B onto M_2 (M_2 coordinates), with inverse
/// x -> E_{M_1}(x u_j) # v_j.
SmashIso psi_iso(const Tower& t, const DerivedWeakHopf& dw, const TowerAction& b_action);
/// m # a -> m a from M # A onto M_1 (M_1 coordinates), with inverse
/// x -> E_M(x z_j) # w_j.
SmashIso phi_iso(const Tower& t, const DerivedWeakHopf& dw, const TowerAction& a_action);

/// M_2 = M A B: products m a b span M_2 and psi(phi(m # a) # b) = m a b.
Report duality_tower(const DerivedWeakHopf& dw, const SmashIso& phi, const SmashIso& psi);

}  // namespace wha
