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

#include <string>
#include <string_view>
#include <vector>

#include "wha/algebra/extension.hpp"

namespace wha {

/// A conditional expectation with dual bases and a trace on the small algebra.
struct MarkovExample {
  std::string name;
  CondExpectation expectation;
  DualBases duals;
  Vec trace;
};

/// Built-in extensions:
///   q-in-q2      Q in Q^2, uniform trace (index 2)
///   q-in-m2      Q in M_2(Q), normalized trace (index 4)
///   q2-in-m2     diagonal Q^2 in M_2(Q) (index 2)
///   m2-in-m2     the identity extension of M_2(Q) (trivial centralizer)
///   s2-in-s3     QS_2 in QS_3 with the group-algebra projection
///   skewed-q-in-m2  Q in M_2(Q) with E(x) = (2 x_11 + x_22) / 3
std::vector<std::string> markov_example_names();
/// Throws std::invalid_argument for unknown names.
MarkovExample markov_example(std::string_view name);

/// Assembles an example from an expectation and a trace, solving for dual
/// bases; throws InvalidExtension when none exist.
MarkovExample make_markov_example(std::string name, CondExpectation e, Vec trace);

MarkovCertificate certify(const MarkovExample& ex);

}  // namespace wha
