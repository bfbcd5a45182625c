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


#include "wha/markov/examples.hpp"

#include <array>
#include <stdexcept>

#include "wha/groupoid/groupoid.hpp"

namespace wha {

namespace {

using Perm = std::array<std::size_t, 3>;

// Symmetric group on three letters; element 0 is the identity and element 1
// the transposition (0 1), so the first two span QS_2.
Groupoid symmetric_group3() {
  const std::vector<Perm> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> names = {"1", "(01)", "(02)", "(12)", "(012)", "(021)"};
  std::vector<Morphism> ms;
  for (const auto& n : names) ms.push_back({n, 0, 0});
  std::vector<Groupoid::Composition> table;
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h) {
      Perm gh;
      for (std::size_t x = 0; x < 3; ++x) gh[x] = perms[g][perms[h][x]];
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k] == gh) table.push_back({g, h, k});
    }
  return Groupoid::make({"*"}, ms, table);
}

MarkovExample s2_in_s3() {
  Algebra m = groupoid_algebra(symmetric_group3()).alg;
  Algebra n = groupoid_algebra(cyclic_group(2)).alg;
  Mat embed(6, 2);
  embed(0, 0) = 1;
  embed(1, 1) = 1;
  Mat map(2, 6);
  map(0, 0) = 1;
  map(1, 1) = 1;
  auto e = CondExpectation::make(Inclusion::make(n, m, embed), map);
  return make_markov_example("s2-in-s3", e, Vec{Scalar(1), Scalar(0)});
}

}  // namespace

std::vector<std::string> markov_example_names() {
  return {"q-in-q2", "q-in-m2", "q2-in-m2", "m2-in-m2", "s2-in-s3", "skewed-q-in-m2"};
}

MarkovExample make_markov_example(std::string name, CondExpectation e, Vec trace) {
  auto db = find_dual_bases(e);
  if (!db) throw InvalidExtension(name + ": " + db.failure);
  return MarkovExample{std::move(name), std::move(e), *db, std::move(trace)};
}

MarkovExample markov_example(std::string_view name) {
  const Scalar half(1, 2);
  if (name == "q-in-q2")
    return make_markov_example("q-in-q2", scalar_extension(diagonal_algebra(2), Vec{half, half}), Vec{Scalar(1)});
  if (name == "q-in-m2")
    return make_markov_example("q-in-m2", scalar_extension(matrix_algebra(2), Vec{half, 0, 0, half}),
                               Vec{Scalar(1)});
  if (name == "skewed-q-in-m2")
    return make_markov_example("skewed-q-in-m2",
                               scalar_extension(matrix_algebra(2), Vec{Scalar(2, 3), 0, 0, Scalar(1, 3)}),
                               Vec{Scalar(1)});
  if (name == "q2-in-m2") {
    Mat embed(4, 2), map(2, 4);
    embed(0, 0) = 1;
    embed(3, 1) = 1;
    map(0, 0) = 1;
    map(1, 3) = 1;
    auto e = CondExpectation::make(Inclusion::make(diagonal_algebra(2), matrix_algebra(2), embed), map);
    return make_markov_example("q2-in-m2", e, Vec{half, half});
  }
  if (name == "m2-in-m2") {
    auto e = CondExpectation::make(Inclusion::make(matrix_algebra(2), matrix_algebra(2), Mat::identity(4)),
                                   Mat::identity(4));
    return make_markov_example("m2-in-m2", e, Vec{half, 0, 0, half});
  }
  if (name == "s2-in-s3") return s2_in_s3();
  throw std::invalid_argument("unknown Markov example: " + std::string(name));
}

MarkovCertificate certify(const MarkovExample& ex) {
  return certify_markov(ex.expectation, ex.duals, ex.trace);
}

}  // namespace wha
