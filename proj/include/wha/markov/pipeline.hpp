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
#include <optional>
#include <string>
#include <vector>

#include "wha/markov/examples.hpp"
#include "wha/report.hpp"

namespace wha {

struct PipelineOptions {
  std::size_t depth = 2;
  /// Run depth 2, the derived weak Hopf algebras, both actions and both
  /// smash product isomorphisms.
  bool derive = false;
  /// Run the composite idempotents f_0..f_n.
  std::optional<std::size_t> appendix_fn;
  std::size_t max_dim = 64;
};

struct StageResult {
  std::string name;
  Report report;
  std::string error;  // set when the stage could not complete

  bool passed() const { return error.empty() && report.all_passed(); }
};

struct PipelineResult {
  std::vector<StageResult> stages;

  bool passed() const;
  /// First stage that did not pass, or nullptr.
  const StageResult* failed_stage() const;
  /// All stage reports with names prefixed by the stage; a stage error
  /// becomes a failed check named after the stage.
  Report combined(const std::string& pipeline) const;
};

/// Runs certification, the tower and the requested later stages in order,
/// stopping after the first stage that fails.
PipelineResult run_tower_pipeline(const MarkovExample& ex, const PipelineOptions& opt);

}  // namespace wha
