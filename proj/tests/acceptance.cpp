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


// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "wha/action/action.hpp"
#include "wha/appendix/appendix.hpp"
#include "wha/cli/commands.hpp"
#include "wha/groupoid/groupoid.hpp"
#include "wha/markov/derived.hpp"
#include "wha/markov/pipeline.hpp"
#include "wha/markov/smash_iso.hpp"

using namespace wha;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::pair<std::string, Groupoid>> groupoid_corpus() {
  return {{"trivial", trivial_groupoid()},
          {"z2", cyclic_group(2)},
          {"z3", cyclic_group(3)},
          {"pair2", pair_groupoid(2)},
          {"pair3", pair_groupoid(3)},
          {"z2+pair2", disjoint_union(cyclic_group(2), pair_groupoid(2))}};
}

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!ok) detail << "; ";
    ok = false;
    detail << what;
  }
};

Verdict axiom_suite() {
  Verdict v;
  double worst = 0;
  for (const auto& [name, g] : groupoid_corpus()) {
    auto t0 = Clock::now();
    Report r = cli::groupoid_report(cli::groupoid_spec(name, g), true, true);
    double s = seconds_since(t0);
    worst = std::max(worst, s);
    if (!r.all_passed()) v.fail(name + ": " + r.failed_names().front());
    if (s >= 1.0) v.fail(name + " took " + std::to_string(s) + " s");
  }
  if (v.ok) v.detail << "6 groupoids, kG and (kG)*, slowest " << worst << " s";
  return v;
}

Verdict dual_involution() {
  Verdict v;
  std::size_t n = 0;
  for (const auto& [name, g] : groupoid_corpus()) {
    for (const WeakHopf& h : {groupoid_algebra(g), groupoid_dual(g)}) {
      ++n;
      if (!(dual(dual(h)) == h)) v.fail(name);
    }
  }
  if (v.ok) v.detail << n << " weak Hopf algebras";
  return v;
}

Verdict tower_suite() {
  Verdict v;
  double worst = 0;
  for (const std::string name : {"q-in-q2", "q-in-m2", "q2-in-m2"}) {
    auto t0 = Clock::now();
    Tower t = build_tower(certify(markov_example(name)), 2);
    Frame f = make_frame(t);
    CentralizerLattice lat = centralizers(t, f);
    Report r;
    r.append(t.report, "tower");
    r.append(lat.report, "lattice");
    double s = seconds_since(t0);
    worst = std::max(worst, s);
    for (const char* key : {"tower/braid-e1e2e1", "tower/braid-e2e1e2", "tower/pimsner-popa-right-e1",
                            "tower/pimsner-popa-left-e1", "tower/pimsner-popa-right-e2",
                            "tower/pimsner-popa-left-e2", "tower/centralizer-map-anti-multiplicative",
                            "tower/centralizer-map-trace"})
      if (!r.find(key)) v.fail(name + ": missing " + key);
    if (!r.all_passed()) v.fail(name + ": " + r.failed_names().front());
    if (s >= 10.0) v.fail(name + " took " + std::to_string(s) + " s");
  }
  if (v.ok) v.detail << "3 towers to M_2, slowest " << worst << " s";
  return v;
}

Verdict depth2_derivation() {
  Verdict v;
  double worst = 0;
  std::size_t checks = 0;
  PipelineOptions opt;
  opt.derive = true;
  for (const std::string name : {"q-in-q2", "q2-in-m2", "m2-in-m2", "q-in-m2"}) {
    auto t0 = Clock::now();
    PipelineResult res = run_tower_pipeline(markov_example(name), opt);
    double s = seconds_since(t0);
    worst = std::max(worst, s);
    Report r = res.combined(name);
    checks += r.checks().size();
    for (const char* key : {"derive/target-subalgebra-is-v", "derive/source-subalgebra-is-w",
                            "derive/dimension-a-equals-b", "derive/haar-normalized-target",
                            "derive/haar-normalized-source", "derive/haar-antipode-invariant",
                            "derive/target-counit-jones"})
      if (!r.passed(key)) v.fail(name + ": " + key);
    const StageResult* bad = res.failed_stage();
    if (bad && (bad->name == "depth2" || bad->name == "derive" || bad->name == "expectations" ||
                bad->name == "pairing"))
      v.fail(name + ": stage " + bad->name);
    if (s >= 60.0) v.fail(name + " took " + std::to_string(s) + " s");
  }
  // The Haar integral is checked in the form e_2 S^{-1}(e_2) = E_M(w^{-1}) e_2 w;
  // e_2 w itself is a two-sided integral with eps_t(e_2 w) = E_M(w).
  if (v.ok) v.detail << "4 depth-2 towers, " << checks << " checks, Haar = e_2 S^{-1}(e_2), slowest " << worst << " s";
  return v;
}

Verdict smash_theorems() {
  Verdict v;
  PipelineOptions opt;
  opt.derive = true;
  for (const std::string name : {"q-in-q2", "q2-in-m2", "m2-in-m2", "q-in-m2"}) {
    PipelineResult res = run_tower_pipeline(markov_example(name), opt);
    Report r = res.combined(name);
    for (const char* key : {"b-action/invariants-are-m", "a-action/invariants-are-n", "psi/bijective", "psi/unit",
                            "psi/multiplicative", "phi/bijective", "phi/unit", "phi/multiplicative"})
      if (!r.passed(key)) v.fail(name + ": " + key);
    if (!res.passed()) v.fail(name + ": stage " + res.failed_stage()->name);
  }
  if (v.ok) v.detail << "M^B-invariants = M, M^A = N, psi and phi isomorphisms on 4 towers";
  return v;
}

Verdict degeneration() {
  Verdict v;
  Tower t = build_tower(certify(markov_example("m2-in-m2")), 2);
  Frame f = make_frame(t);
  CentralizerLattice lat = centralizers(t, f);
  auto d2 = depth2_check(t, f, lat);
  if (!d2) {
    v.fail("depth2: " + d2.failure);
    return v;
  }
  if (lat.U.dim() != 1) v.fail("U is not trivial");
  Expectations ex = conditional_expectations(t, f, lat, *d2);
  PairingData p = pairing(f, lat);
  DerivedWeakHopf dw = derive_whopf(Depth2Context{f, lat, *d2, ex, p});
  if (!is_hopf(dw.B_whopf)) v.fail("B is not Hopf");
  if (v.ok) v.detail << "M_2(Q) in M_2(Q): U = k1, dim B = " << dw.B_whopf.dim() << ", is_hopf";
  return v;
}

Verdict appendix() {
  Verdict v;
  auto t0 = Clock::now();
  Tower t = build_tower(certify(markov_example("q-in-q2")), 5);
  Scalar expected = Scalar(1, 2);
  for (std::size_t n = 0; n <= 2; ++n) {
    CompositeData c = composite_idempotent(t, n);
    if (!c.report.all_passed()) v.fail("f" + std::to_string(n) + ": " + c.report.failed_names().front());
    if (!(c.expectation_value == expected))
      v.fail("f" + std::to_string(n) + " value " + c.expectation_value.to_string());
    expected = expected * Scalar(1, 2);
  }
  double s = seconds_since(t0);
  if (s >= 60.0) v.fail("took " + std::to_string(s) + " s");
  if (v.ok) v.detail << "f_0, f_1, f_2 at dim " << t.levels.back().alg.dim() << ": 1/2, 1/4, 1/8 in " << s << " s";
  return v;
}

Verdict negative_controls() {
  Verdict v;
  if (kanzaki_element(matrix_algebra(2, 2))) v.fail("M_2(F_2) has a Kanzaki element");

  Groupoid g = pair_groupoid(2);
  WeakHopf h = groupoid_algebra(g);
  // S(x) = x^{-1} + x on one non-loop x still satisfies both counital antipode
  // axioms because x x = 0.
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.morphisms()[i].source != g.morphisms()[i].target) {
      h.S(i, i) += Scalar(1);
      break;
    }
  Report r = verify_axioms(h);
  bool seen = false;
  for (const auto& c : r.checks()) {
    if (c.name == "antipode-convolution") {
      seen = true;
      if (c.passed || c.witness.empty()) v.fail("antipode mutation not caught");
      break;
    }
    if (!c.passed) v.fail("upstream check failed: " + c.name);
  }
  if (!seen) v.fail("no antipode-convolution check");

  MarkovCertificate skew = certify(markov_example("skewed-q-in-m2"));
  bool witnessed = false;
  for (const auto& c : skew.report.checks())
    if (!c.passed && !c.witness.empty()) witnessed = true;
  if (skew.symmetric || !witnessed) v.fail("skewed expectation not rejected with a witness");
  if (v.ok) v.detail << "M_2(F_2) rejected, antipode mutation caught at S(h1)h2S(h3) = S(h), skew rejected";
  return v;
}

Verdict duality_dimensions() {
  Verdict v;
  std::vector<std::pair<std::string, ModuleAlgebra>> cases;
  WeakHopf p2 = groupoid_algebra(pair_groupoid(2));
  WeakHopf z2 = groupoid_algebra(cyclic_group(2));
  cases.emplace_back("trivial action of k pair2", trivial_action(p2));
  cases.emplace_back("standard action of (k pair2)*", standard_action(p2));
  cases.emplace_back("adjoint action of kZ2", adjoint_action(z2));
  cases.emplace_back("standard action of (kZ2)*", standard_action(z2));
  for (const auto& [name, m] : cases) {
    DualityDimensions d = duality_dimension_check(m);
    if (!d.report.all_passed() || d.double_smash != d.endomorphisms) v.fail(name);
  }
  if (v.ok) v.detail << cases.size() << " module algebras";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"axiom suite", axiom_suite},
      {"dual involution", dual_involution},
      {"tower suite", tower_suite},
      {"depth-2 derivation", depth2_derivation},
      {"smash product theorems", smash_theorems},
      {"degeneration to Hopf", degeneration},
      {"composite idempotents", appendix},
      {"negative controls", negative_controls},
      {"duality dimension check", duality_dimensions},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.ok) ++failed;
    std::cout << (v.ok ? "PASS " : "FAIL ") << name << ": " << v.detail.str() << "\n";
  }
  return failed == 0 ? 0 : 1;
}
