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

#include "wha/markov/derived.hpp"
#include "wha/markov/pipeline.hpp"
#include "wha/markov/smash_iso.hpp"

using namespace wha;

namespace {

const std::vector<std::string> kDepth2 = {"q-in-q2", "q2-in-m2", "m2-in-m2", "q-in-m2"};

struct Built {
  Tower tower;
  DerivedWeakHopf dw;
};

Built build(const std::string& name) {
  Tower t = build_tower(certify(markov_example(name)), 2);
  Frame f = make_frame(t);
  CentralizerLattice lat = centralizers(t, f);
  auto d2 = depth2_check(t, f, lat);
  REQUIRE_MESSAGE(bool(d2), d2.failure);
  Expectations ex = conditional_expectations(t, f, lat, *d2);
  PairingData p = pairing(f, lat);
  return {t, derive_whopf(Depth2Context{f, lat, *d2, ex, p})};
}

}  // namespace

TEST_CASE("tower dimensions") {
  auto dims = [](const std::string& name, std::size_t depth) {
    Tower t = build_tower(certify(markov_example(name)), depth);
    INFO(t.report.text());
    CHECK(t.report.all_passed());
    std::vector<std::size_t> out;
    for (const auto& l : t.levels) out.push_back(l.alg.dim());
    return out;
  };
  CHECK(dims("q-in-q2", 3) == std::vector<std::size_t>{2, 4, 8, 16});
  CHECK(dims("q2-in-m2", 3) == std::vector<std::size_t>{4, 8, 16, 32});
  CHECK(dims("q-in-m2", 2) == std::vector<std::size_t>{4, 16, 64});
}

TEST_CASE("tower jones projections and traces") {
  Tower t = build_tower(certify(markov_example("q-in-q2")), 3);
  CHECK(t.lambda() == Scalar(1, 2));
  for (std::size_t k = 1; k <= 3; ++k) {
    const Algebra& a = t.levels[k].alg;
    Vec e = t.levels[k].jones;
    CHECK(a.mul(e, e) == e);
    // Markov property: T_k(e_k) = lambda.
    CHECK(la::dot(t.trace(static_cast<int>(k)), e) == t.lambda());
  }
  // Braid relation e_1 e_2 e_1 = lambda e_1 at level 2.
  Vec e1 = t.jones(1, 2), e2 = t.jones(2, 2);
  CHECK(t.levels[2].alg.mul({e1, e2, e1}) == la::scaled(t.lambda(), e1));
}

TEST_CASE("centralizer lattice dimensions") {
  auto lattice = [](const std::string& name) {
    Tower t = build_tower(certify(markov_example(name)), 2);
    Frame f = make_frame(t);
    return centralizers(t, f);
  };
  CentralizerLattice l = lattice("q-in-q2");
  INFO(l.report.text());
  CHECK(l.report.all_passed());
  CHECK(l.U.dim() == 2);
  CHECK(l.A.dim() == 4);
  CHECK(l.B.dim() == 4);
  CHECK(l.C.dim() == 8);
  CentralizerLattice m = lattice("q-in-m2");
  CHECK(m.A.dim() == 16);
  CHECK(m.B.dim() == 16);
}

TEST_CASE("depth two holds exactly on the depth two corpus") {
  for (const auto& name : kDepth2) {
    Tower t = build_tower(certify(markov_example(name)), 2);
    Frame f = make_frame(t);
    CentralizerLattice lat = centralizers(t, f);
    auto d2 = depth2_check(t, f, lat);
    INFO(name << ": " << d2.failure);
    CHECK(bool(d2));
  }
  Tower t = build_tower(certify(markov_example("s2-in-s3")), 2);
  Frame f = make_frame(t);
  CentralizerLattice lat = centralizers(t, f);
  auto d2 = depth2_check(t, f, lat);
  CHECK_FALSE(bool(d2));
  CHECK_FALSE(d2.failure.empty());
}

TEST_CASE("skewed expectation is rejected with a witness") {
  MarkovCertificate c = certify(markov_example("skewed-q-in-m2"));
  CHECK_FALSE(c.certified());
  CHECK_FALSE(c.symmetric);
  bool witnessed = false;
  for (const auto& ch : c.report.checks())
    if (!ch.passed && !ch.witness.empty()) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("derived weak Hopf algebras pass every check") {
  for (const auto& name : kDepth2) {
    Built b = build(name);
    INFO(name << "\n" << b.dw.report.text());
    CHECK(b.dw.report.all_passed());
    CHECK(verify_axioms(b.dw.B_whopf).all_passed());
    CHECK(verify_axioms(b.dw.A_whopf).all_passed());
    CHECK(b.dw.B_whopf.dim() == b.dw.ctx.lattice.B.dim());
    CHECK(b.dw.A_whopf.dim() == b.dw.ctx.lattice.A.dim());
  }
}

TEST_CASE("trivial centralizer gives a Hopf algebra") {
  Built b = build("m2-in-m2");
  CHECK(b.dw.ctx.lattice.U.dim() == 1);
  CHECK(is_hopf(b.dw.B_whopf));
  Built q = build("q-in-q2");
  CHECK_FALSE(is_hopf(q.dw.B_whopf));
}

TEST_CASE("haar integral is normalized and equals the product form") {
  for (const auto& name : kDepth2) {
    Built b = build(name);
    const Report& r = b.dw.report;
    INFO(name);
    CHECK(r.passed("haar-product-form"));
    CHECK(r.passed("haar-normalized-target"));
    CHECK(r.passed("haar-normalized-source"));
    // Independent oracle: e_2 w is a left integral of B, so haar is a
    // multiple of it by an element of M, and eps_t(haar) = 1.
    const Frame& f = b.dw.ctx.frame;
    Vec e2w = f.mul(f.e2, b.dw.ctx.pairing.w);
    CHECK(b.dw.ctx.lattice.B.contains(e2w));
    CHECK(b.dw.ctx.lattice.B.contains(b.dw.haar));
  }
}

TEST_CASE("smash product isomorphisms") {
  Built b = build("q-in-q2");
  TowerAction ba = action_B_on_M1(b.tower, b.dw);
  TowerAction aa = action_A_on_M(b.tower, b.dw);
  INFO(ba.report.text() << aa.report.text());
  CHECK(ba.report.all_passed());
  CHECK(aa.report.all_passed());
  CHECK(ba.invariants.dim() == 2);  // M
  CHECK(aa.invariants.dim() == 1);  // N
  SmashIso psi = psi_iso(b.tower, b.dw, ba);
  SmashIso phi = phi_iso(b.tower, b.dw, aa);
  INFO(psi.report.text() << phi.report.text());
  CHECK(psi.report.all_passed());
  CHECK(phi.report.all_passed());
  CHECK(psi.smash.alg.dim() == 8);
  CHECK(phi.smash.alg.dim() == 4);
  CHECK(psi.map * psi.inverse == Mat::identity(8));
  CHECK(phi.map * phi.inverse == Mat::identity(4));
  Report d = duality_tower(b.dw, phi, psi);
  INFO(d.text());
  CHECK(d.all_passed());
}

TEST_CASE("smash isomorphisms on the remaining depth two examples (property)") {
  for (const auto& name : {"q2-in-m2", "m2-in-m2"}) {
    Built b = build(name);
    TowerAction ba = action_B_on_M1(b.tower, b.dw);
    TowerAction aa = action_A_on_M(b.tower, b.dw);
    SmashIso psi = psi_iso(b.tower, b.dw, ba);
    SmashIso phi = phi_iso(b.tower, b.dw, aa);
    INFO(name);
    CHECK(ba.report.all_passed());
    CHECK(aa.report.all_passed());
    CHECK(psi.report.all_passed());
    CHECK(phi.report.all_passed());
    CHECK(psi.smash.alg.dim() == b.tower.levels[2].alg.dim());
    CHECK(phi.smash.alg.dim() == b.tower.levels[1].alg.dim());
  }
}

TEST_CASE("a perturbed tower action is caught") {
  Built b = build("q-in-q2");
  TowerAction ba = action_B_on_M1(b.tower, b.dw);
  ModuleAlgebra broken = ba.module;
  bool changed = false;
  for (auto& m : broken.act) {
    if (m == Mat::identity(m.rows())) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= Scalar(2);
    changed = true;
    break;
  }
  REQUIRE(changed);
  CHECK_FALSE(verify_module_algebra(broken).all_passed());
}

TEST_CASE("duality dimensions for the tower action") {
  Built b = build("q-in-q2");
  TowerAction ba = action_B_on_M1(b.tower, b.dw);
  DualityDimensions d = duality_dimension_check(ba.module);
  INFO(d.report.text());
  CHECK(d.report.all_passed());
  CHECK(d.double_smash == d.endomorphisms);
}

TEST_CASE("pipeline stops at the first failing stage") {
  PipelineOptions opt;
  opt.derive = true;
  PipelineResult ok = run_tower_pipeline(markov_example("q-in-q2"), opt);
  CHECK(ok.passed());
  CHECK(ok.failed_stage() == nullptr);
  PipelineResult bad = run_tower_pipeline(markov_example("s2-in-s3"), opt);
  REQUIRE(bad.failed_stage() != nullptr);
  CHECK(bad.failed_stage()->name == "depth2");
  PipelineResult skew = run_tower_pipeline(markov_example("skewed-q-in-m2"), opt);
  REQUIRE(skew.failed_stage() != nullptr);
  CHECK(skew.failed_stage()->name == "certify");
}
