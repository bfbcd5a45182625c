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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wha::kernels {

/// Execution policy for the verification kernels. The serial variants are the
/// reference implementation; the parallel ones use OpenMP and must produce
/// identical results.
enum class Exec { serial, parallel };

void set_default_exec(Exec exec);
Exec default_exec();

/// A failed probe: its index and the witness text it produced.
struct Failure {
  std::size_t index;
  std::string witness;
};

/// Smallest i < count for which probe(i) returns a witness, or nullopt.
///
/// The parallel variant still reports the minimal failing index, so the
/// result does not depend on scheduling.
std::optional<Failure> find_first_failure(
    std::size_t count, const std::function<std::optional<std::string>(std::size_t)>& probe,
    Exec exec = default_exec());

/// Runs body(i) for all i < count. The first exception thrown (by index) is
/// rethrown after the loop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  Exec exec = default_exec());

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f, Exec exec = default_exec()) {
  std::vector<T> out(count);
  parallel_for(
      count, [&](std::size_t i) { out[i] = f(i); }, exec);
  return out;
}

}  // namespace wha::kernels
