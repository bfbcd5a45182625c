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


#include "wha/markov/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <memory>

#include "wha/appendix/appendix.hpp"
#include "wha/markov/smash_iso.hpp"

namespace wha {

bool PipelineResult::passed() const { return failed_stage() == nullptr; }

const StageResult* PipelineResult::failed_stage() const {
  for (const auto& s : stages)
    if (!s.passed()) return &s;
  return nullptr;
}

Report PipelineResult::combined(const std::string& pipeline) const {
  Report r(pipeline);
  for (const auto& s : stages) {
    r.append(s.report, s.name);
    if (!s.error.empty()) r.add(s.name, "stage", false, s.error);
  }
  return r;
}

namespace {

class Runner {
 public:
  explicit Runner(PipelineResult& out) : out_(out) {}

  // Runs `body` as a stage unless an earlier one failed.
  bool stage(const std::string& name, const std::function<Report()>& body) {
    if (stopped_) return false;
    StageResult s{name, Report(name), {}};
    try {
      s.report = body();
    } catch (const std::exception& e) {
      s.error = e.what();
    }
    stopped_ = !s.passed();
    out_.stages.push_back(std::move(s));
    return !stopped_;
  }

 private:
  PipelineResult& out_;
  bool stopped_ = false;
};

}  // namespace

PipelineResult run_tower_pipeline(const MarkovExample& ex, const PipelineOptions& opt) {
  PipelineResult out;
  Runner run(out);
  std::size_t depth = opt.depth;
  if (opt.derive) depth = std::max<std::size_t>(depth, 2);
  if (opt.appendix_fn) depth = std::max(depth, 2 * *opt.appendix_fn + 1);

  std::unique_ptr<MarkovCertificate> cert;
  run.stage("certify", [&] {
    cert = std::make_unique<MarkovCertificate>(certify(ex));
    Report r = cert->report;
    r.add("certified", "markov-extension", cert->certified(),
          cert->certified() ? "" : "not a certified symmetric Markov extension");
    return r;
  });
  std::unique_ptr<Tower> tower;
  run.stage("tower", [&] {
    tower = std::make_unique<Tower>(build_tower(*cert, depth));
    return tower->report;
  });

  if (opt.derive) {
    std::unique_ptr<Frame> frame;
    std::unique_ptr<CentralizerLattice> lat;
    std::unique_ptr<Depth2Data> d2;
    std::unique_ptr<Expectations> exps;
    std::unique_ptr<PairingData> pair;
    std::unique_ptr<DerivedWeakHopf> dw;
    std::unique_ptr<TowerAction> ba, aa;
    std::unique_ptr<SmashIso> psi, phi;
    run.stage("lattice", [&] {
      frame = std::make_unique<Frame>(make_frame(*tower));
      lat = std::make_unique<CentralizerLattice>(centralizers(*tower, *frame));
      return lat->report;
    });
    run.stage("depth2", [&] {
      auto r2 = depth2_check(*tower, *frame, *lat);
      Report r("depth2");
      r.add("dual-bases-in-centralizers", "depth2", bool(r2), r2 ? "" : r2.failure);
      if (r2) d2 = std::make_unique<Depth2Data>(*r2);
      return r;
    });
    run.stage("expectations", [&] {
      exps = std::make_unique<Expectations>(conditional_expectations(*tower, *frame, *lat, *d2));
      return exps->report;
    });
    run.stage("pairing", [&] {
      pair = std::make_unique<PairingData>(pairing(*frame, *lat));
      return pair->report;
    });
    run.stage("derive", [&] {
      dw = std::make_unique<DerivedWeakHopf>(derive_whopf(Depth2Context{*frame, *lat, *d2, *exps, *pair}));
      Report r = dw->report;
      if (lat->U.dim() == 1) {
        bool h = is_hopf(dw->B_whopf);
        r.add("trivial-centralizer-gives-hopf", "derived-degeneration", h, h ? "" : "Delta(1) != 1 (x) 1");
      }
      return r;
    });
    run.stage("b-action", [&] {
      ba = std::make_unique<TowerAction>(action_B_on_M1(*tower, *dw));
      return ba->report;
    });
    run.stage("psi", [&] {
      psi = std::make_unique<SmashIso>(psi_iso(*tower, *dw, *ba));
      return psi->report;
    });
    run.stage("a-action", [&] {
      aa = std::make_unique<TowerAction>(action_A_on_M(*tower, *dw));
      return aa->report;
    });
    run.stage("phi", [&] {
      phi = std::make_unique<SmashIso>(phi_iso(*tower, *dw, *aa));
      return phi->report;
    });
    run.stage("duality-tower", [&] { return duality_tower(*dw, *phi, *psi); });
  }

  if (opt.appendix_fn)
    for (std::size_t n = 0; n <= *opt.appendix_fn; ++n)
      run.stage("appendix-f" + std::to_string(n),
                [&] { return composite_idempotent(*tower, n, opt.max_dim).report; });
  return out;
}

}  // namespace wha
