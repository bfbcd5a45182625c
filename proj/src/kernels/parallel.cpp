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

#include "wha/kernels/parallel.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>

#include <omp.h>

namespace wha::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

void set_default_exec(Exec exec) { g_exec.store(exec); }
Exec default_exec() { return g_exec.load(); }

std::optional<Failure> find_first_failure(
    std::size_t count, const std::function<std::optional<std::string>(std::size_t)>& probe,
    Exec exec) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto w = probe(i)) return Failure{i, std::move(*w)};
    return std::nullopt;
  }

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{none};
  std::string best_witness;
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_index = none;

  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (i > best.load(std::memory_order_relaxed)) continue;
    try {
      auto w = probe(i);
      if (!w) continue;
      std::lock_guard<std::mutex> lock(mu);
      if (i < best.load()) {
        best.store(i);
        best_witness = std::move(*w);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error && error_index < best.load()) std::rethrow_exception(error);
  if (best.load() == none) return std::nullopt;
  return Failure{best.load(), std::move(best_witness)};
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_index = none;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace wha::kernels
