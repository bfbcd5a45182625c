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

#include "wha/report.hpp"

#include <sstream>

#include "json.hpp"

namespace wha {

void Report::add(std::string name, std::string anchor, bool passed, std::string witness) {
  checks_.push_back(Check{std::move(name), std::move(anchor), passed, std::move(witness)});
}

void Report::expect(std::string name, std::string anchor,
                    const std::optional<std::string>& failure) {
  add(std::move(name), std::move(anchor), !failure.has_value(), failure.value_or(""));
}

void Report::append(const Report& other, std::string_view prefix) {
  for (const auto& c : other.checks_) {
    Check copy = c;
    if (!prefix.empty()) copy.name = std::string(prefix) + "/" + copy.name;
    checks_.push_back(std::move(copy));
  }
}

bool Report::all_passed() const { return failed_count() == 0; }

std::size_t Report::passed_count() const {
  std::size_t n = 0;
  for (const auto& c : checks_) n += c.passed ? 1 : 0;
  return n;
}

std::size_t Report::failed_count() const { return checks_.size() - passed_count(); }

const Check* Report::find(std::string_view name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::passed(std::string_view name) const {
  const Check* c = find(name);
  return c && c->passed;
}

std::vector<std::string> Report::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : checks_)
    if (!c.passed) out.push_back(c.name);
  return out;
}

std::string Report::text() const {
  std::ostringstream os;
  if (!pipeline_.empty()) os << "== " << pipeline_ << " ==\n";
  for (const auto& c : checks_) {
    os << (c.passed ? "ok    " : "FAIL  ") << c.name << "  [" << c.anchor << "]";
    if (!c.passed && !c.witness.empty()) os << "\n      witness: " << c.witness;
    os << '\n';
  }
  os << passed_count() << " passed, " << failed_count() << " failed\n";
  return os.str();
}

std::string Report::machine() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["pass"] = c.passed;
    if (!c.witness.empty()) j["witness"] = c.witness;
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace wha
