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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wha/groupoid/groupoid.hpp"
#include "wha/markov/examples.hpp"
#include "wha/whopf/weak_hopf.hpp"

namespace wha::cli {

/// Malformed or inconsistent input; the message names the offending field.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

enum class SpecKind { algebra, weak_hopf, groupoid, markov_extension };

std::string_view kind_name(SpecKind k);

/// A parsed input file. Exactly one payload is set, matching `kind`.
///
/// Format (JSON; scalars are integers or "p/q" strings):
///   {"kind": "algebra" | "weak-hopf" | "groupoid" | "markov-extension",
///    "name": "...", "field": "rational" | "prime:p", "payload": {...}}
/// algebra:   {"dim", "labels", "unit", "products": [[i, j, k, c], ...]}
///            meaning e_i e_j has coefficient c on e_k
/// weak-hopf: {"algebra", "coproduct": [[k, i, j, c], ...], "counit",
///             "antipode": rows}
/// groupoid:  {"objects", "morphisms": [{"name", "source", "target"}],
///             "compositions": [[g, h, g o h], ...]} by name
/// markov-extension: {"small", "big", "embedding": rows, "expectation": rows,
///                    "trace"} with algebras in the algebra format
struct SpecFile {
  SpecKind kind = SpecKind::algebra;
  std::string name;
  std::uint32_t modulus = 0;
  std::optional<Algebra> algebra;
  std::optional<WeakHopf> whopf;
  std::optional<Groupoid> groupoid;
  std::optional<MarkovExample> markov;
};

SpecFile parse_spec(std::string_view text);
/// Throws SpecError when the file cannot be read.
SpecFile read_spec(const std::string& path);
std::string write_spec(const SpecFile& s);

SpecFile algebra_spec(std::string name, const Algebra& a);
SpecFile weak_hopf_spec(std::string name, const WeakHopf& h);
SpecFile groupoid_spec(std::string name, const Groupoid& g, std::uint32_t modulus = 0);
SpecFile markov_spec(const MarkovExample& ex);

/// Built-in groupoids and Markov extensions by name.
std::vector<std::string> builtin_names();
/// Throws SpecError for unknown names.
SpecFile builtin_spec(std::string_view name);

/// Same kind, field and structure.
bool same_structure(const SpecFile& a, const SpecFile& b);

}  // namespace wha::cli
