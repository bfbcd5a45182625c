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
#include <ostream>
#include <string>
#include <vector>

#include "wha/cli/spec_file.hpp"
#include "wha/markov/pipeline.hpp"
#include "wha/report.hpp"

namespace wha::cli {

enum ExitCode { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

/// Axioms, counital maps, integrals and dual(dual(H)) = H for a weak-hopf or
/// groupoid file.
Report verify_wha(const SpecFile& s);
Report groupoid_report(const SpecFile& s, bool with_dual, bool with_integrals);
/// Associativity, unit and centre of an algebra file.
Report algebra_report(const SpecFile& s);
PipelineResult tower_report(const SpecFile& s, const PipelineOptions& opt);

/// Command line entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wha::cli
