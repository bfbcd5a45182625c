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


#include <benchmark/benchmark.h>

#include "wha/algebra/algebra.hpp"
#include "wha/kernels/parallel.hpp"
#include "wha/markov/derived.hpp"
#include "wha/markov/pipeline.hpp"

using namespace wha;

namespace {

kernels::Exec mode(const benchmark::State& st) {
  return st.range(0) == 0 ? kernels::Exec::serial : kernels::Exec::parallel;
}

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "openmp"); }

// Associativity of M_3 on all basis triples.
void BM_AssociativityScan(benchmark::State& st) {
  Algebra a = matrix_algebra(3);
  const std::size_t d = a.dim();
  auto probe = [&](std::size_t t) -> std::optional<std::string> {
    Vec x = la::unit_vector(d, t / (d * d)), y = la::unit_vector(d, t / d % d), z = la::unit_vector(d, t % d);
    if (a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z))) return std::nullopt;
    return "not associative";
  };
  for (auto _ : st) benchmark::DoNotOptimize(kernels::find_first_failure(d * d * d, probe, mode(st)));
  label(st);
}
BENCHMARK(BM_AssociativityScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Tower(benchmark::State& st) {
  kernels::set_default_exec(mode(st));
  MarkovCertificate c = certify(markov_example("q-in-m2"));
  for (auto _ : st) benchmark::DoNotOptimize(build_tower(c, 2));
  label(st);
}
BENCHMARK(BM_Tower)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DerivePipeline(benchmark::State& st) {
  kernels::set_default_exec(mode(st));
  MarkovExample ex = markov_example("q2-in-m2");
  PipelineOptions opt;
  opt.derive = true;
  for (auto _ : st) benchmark::DoNotOptimize(run_tower_pipeline(ex, opt));
  label(st);
}
BENCHMARK(BM_DerivePipeline)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
