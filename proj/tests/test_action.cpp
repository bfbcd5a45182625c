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

#include "doctest.h"

#include "wha/action/action.hpp"
#include "wha/groupoid/groupoid.hpp"

using namespace wha;

namespace {

bool same(const Subspace& a, const Subspace& b) { return a.contains(b) && b.contains(a); }

std::vector<ModuleAlgebra> action_corpus() {
  std::vector<ModuleAlgebra> out;
  for (const auto& g : {cyclic_group(2), cyclic_group(3), pair_groupoid(2),
                        disjoint_union(cyclic_group(2), pair_groupoid(2))}) {
    WeakHopf h = groupoid_algebra(g);
    out.push_back(trivial_action(h));
    out.push_back(standard_action(h));
    out.push_back(adjoint_action(h));
    WeakHopf d = groupoid_dual(g);
    out.push_back(trivial_action(d));
    out.push_back(standard_action(d));
    out.push_back(adjoint_action(d));
  }
  return out;
}

}  // namespace

TEST_CASE("the three canonical actions are module algebras") {
  for (const auto& m : action_corpus()) {
    Report r = verify_module_algebra(m);
    INFO(r.text());
    CHECK(r.all_passed());
  }
}

TEST_CASE("a broken action is reported") {
  ModuleAlgebra m = standard_action(groupoid_algebra(cyclic_group(2)));
  m.act[1] = Mat::identity(2);
  Report r = verify_module_algebra(m);
  CHECK_FALSE(r.all_passed());
}

TEST_CASE("invariants of the canonical actions") {
  WeakHopf z2 = groupoid_algebra(cyclic_group(2));
  Subspace inv = invariants(standard_action(z2));
  CHECK(inv.dim() == 1);
  CHECK(inv.contains(z2.alg.one()));
  // kZ2 is commutative, so the adjoint action is trivial on all of it.
  ModuleAlgebra ad = adjoint_action(z2);
  CHECK(ad.A.dim() == 2);
  CHECK(invariants(ad).dim() == 2);
  CHECK(same(invariants(ad), center(ad.A)));
  WeakHopf pg = groupoid_algebra(pair_groupoid(2));
  // z is invariant iff eps_t(hz) = eps_t(h)z for all h, which only 1 satisfies here.
  ModuleAlgebra triv = trivial_action(pg);
  CHECK(invariants(triv).dim() == 1);
  // For a groupoid the standard invariants are the span of the identities.
  CHECK(invariants(standard_action(pg)).dim() == 2);
}

TEST_CASE("actions and coactions correspond") {
  for (const auto& m : action_corpus()) {
    ComoduleAlgebra c = action_comodule_bridge(m);
    Report r = verify_comodule_algebra(c);
    INFO(r.text());
    CHECK(r.all_passed());
    ModuleAlgebra back = comodule_action_bridge(c, m.H);
    CHECK(back.act == m.act);
    CHECK(same(coinvariants(c), invariants(m)));
  }
  WeakHopf z2 = groupoid_algebra(cyclic_group(2));
  ComoduleAlgebra c = action_comodule_bridge(standard_action(z2));
  for (std::size_t i = 0; i < 2; ++i) CHECK(c.rho[i] == z2.coproduct(z2.alg.basis(i)));
}

TEST_CASE("smash products: dimensions, unit and associativity") {
  WeakHopf z2 = groupoid_algebra(cyclic_group(2));
  Smash s1 = smash(trivial_action(z2));  // A = k
  CHECK(s1.alg.dim() == 2);
  CHECK(s1.report.all_passed());
  Smash s2 = smash(standard_action(z2));  // Hopf: no collapse
  CHECK(s2.alg.dim() == 4);
  CHECK(s2.report.all_passed());
  WeakHopf pg = groupoid_algebra(pair_groupoid(2));
  Smash s3 = smash(trivial_action(pg));  // H_t # H = H
  CHECK(s3.alg.dim() == pg.dim());
  CHECK(s3.report.all_passed());
  for (const auto& m : action_corpus()) {
    Smash s = smash(m);
    INFO(s.report.text());
    CHECK(s.report.all_passed());
    for (std::size_t i = 0; i < s.alg.dim(); ++i) {
      CHECK(s.alg.mul(s.alg.one(), s.alg.basis(i)) == s.alg.basis(i));
      CHECK(s.alg.mul(s.alg.basis(i), s.alg.one()) == s.alg.basis(i));
    }
  }
}

TEST_CASE("smash product of a corrupted action is rejected") {
  ModuleAlgebra m = trivial_action(groupoid_algebra(pair_groupoid(2)));
  // Kill the action of the identity morphism at the first object.
  m.act[0] = Mat(m.A.dim(), m.A.dim());
  CHECK_FALSE(verify_module_algebra(m).all_passed());
  CHECK_THROWS_AS(smash(m), WellDefinednessFailure);
}

TEST_CASE("dual action on the smash product") {
  WeakHopf z2 = groupoid_algebra(cyclic_group(2));
  // A = k: the dual action is the standard action of H* on H.
  Smash s = smash(trivial_action(z2));
  ModuleAlgebra d = smash_dual_action(s);
  CHECK(verify_module_algebra(d).all_passed());
  ModuleAlgebra st = standard_action(z2);
  CHECK(d.act == st.act);
  for (const auto& m : action_corpus()) {
    ModuleAlgebra da = smash_dual_action(smash(m));
    CHECK(verify_module_algebra(da).all_passed());
  }
}

TEST_CASE("duality dimension check") {
  WeakHopf z2 = groupoid_algebra(cyclic_group(2));
  DualityDimensions a = duality_dimension_check(trivial_action(z2));
  CHECK(a.double_smash == 4);
  CHECK(a.endomorphisms == 4);
  CHECK(a.report.all_passed());
  DualityDimensions b = duality_dimension_check(trivial_action(groupoid_algebra(pair_groupoid(2))));
  INFO(b.report.text());
  CHECK(b.report.all_passed());
  DualityDimensions c = duality_dimension_check(standard_action(z2));
  CHECK(c.report.all_passed());
}
