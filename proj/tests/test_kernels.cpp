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


#include "doctest.h"

#include <stdexcept>

#include "wha/kernels/parallel.hpp"
#include "wha/markov/pipeline.hpp"

using namespace wha;
using kernels::Exec;

namespace {

struct ExecGuard {
  Exec saved = kernels::default_exec();
  ~ExecGuard() { kernels::set_default_exec(saved); }
};

}  // namespace

TEST_CASE("find_first_failure reports the smallest failing index in both modes") {
  auto probe = [](std::size_t i) -> std::optional<std::string> {
    if (i % 97 == 41 || i == 500) return "bad " + std::to_string(i);
    return std::nullopt;
  };
  for (Exec e : {Exec::serial, Exec::parallel}) {
    auto f = kernels::find_first_failure(1000, probe, e);
    REQUIRE(f.has_value());
    CHECK(f->index == 41);
    CHECK(f->witness == "bad 41");
    CHECK_FALSE(kernels::find_first_failure(41, probe, e).has_value());
  }
}

TEST_CASE("parallel_for rethrows the lowest-index exception") {
  for (Exec e : {Exec::serial, Exec::parallel}) {
    try {
      kernels::parallel_for(
          100,
          [](std::size_t i) {
            if (i == 17 || i == 80) throw std::runtime_error(std::to_string(i));
          },
          e);
      FAIL("expected an exception");
    } catch (const std::runtime_error& ex) {
      CHECK(std::string(ex.what()) == "17");
    }
  }
}

TEST_CASE("serial and parallel pipelines produce identical reports") {
  ExecGuard guard;
  PipelineOptions opt;
  opt.derive = true;
  opt.appendix_fn = 1;
  for (const auto& name : {"q-in-q2", "q2-in-m2", "s2-in-s3"}) {
    kernels::set_default_exec(Exec::serial);
    std::string serial = run_tower_pipeline(markov_example(name), opt).combined(name).machine();
    kernels::set_default_exec(Exec::parallel);
    std::string parallel = run_tower_pipeline(markov_example(name), opt).combined(name).machine();
    INFO(name);
    CHECK(serial == parallel);
  }
}
