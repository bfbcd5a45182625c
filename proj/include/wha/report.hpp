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
#include <string_view>
#include <vector>

namespace wha {

/// Outcome of verifying one identity.
struct Check {
  std::string name;
  std::string anchor;  // short key naming the statement being verified
  bool passed = false;
  std::string witness;  // empty on success; otherwise the first violating input
};

/// Ordered list of checks produced by a verification pipeline.
class Report {
 public:
  Report() = default;
  explicit Report(std::string pipeline) : pipeline_(std::move(pipeline)) {}

  const std::string& pipeline() const { return pipeline_; }
  const std::vector<Check>& checks() const { return checks_; }

  void add(std::string name, std::string anchor, bool passed, std::string witness = {});
  /// Records a pass when `failure` is empty, otherwise a failure with that witness.
  void expect(std::string name, std::string anchor, const std::optional<std::string>& failure);
  /// Appends all checks of `other`, prefixing their names with `prefix` when non-empty.
  void append(const Report& other, std::string_view prefix = {});

  bool all_passed() const;
  std::size_t passed_count() const;
  std::size_t failed_count() const;
  const Check* find(std::string_view name) const;
  /// True when a check of that name exists and passed.
  bool passed(std::string_view name) const;
  std::vector<std::string> failed_names() const;

  /// Human-readable listing, one line per check followed by a summary line.
  std::string text() const;
  /// JSON lines: {"name":...,"anchor":...,"pass":...,"witness":...}.
  std::string machine() const;

 private:
  std::string pipeline_;
  std::vector<Check> checks_;
};

}  // namespace wha
