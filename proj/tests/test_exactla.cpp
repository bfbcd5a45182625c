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

#include <random>

#include "wha/exactla/echelon.hpp"
#include "wha/exactla/scalar.hpp"
#include "wha/exactla/subspace.hpp"

using wha::la::Mat;
using wha::la::Scalar;
using wha::la::Subspace;
using wha::la::Vec;

namespace {

Mat random_mat(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
  Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK(a * b == Scalar(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(Scalar(0).inverse(), wha::la::DivisionByZero);
  CHECK(Scalar::parse("-7/14") == Scalar(-1, 2));
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("abc"));
}

TEST_CASE("scalar overflow spills to big rationals and comes back") {
  Scalar big(1LL << 62);
  Scalar sq = big * big;
  CHECK(sq.to_mpq() == mpq_class(mpz_class(1) << 124));
  Scalar back = sq / big;
  CHECK(back == big);
  Scalar tiny(1, (1LL << 62) - 1);
  CHECK((tiny * tiny) / tiny == tiny);
}

TEST_CASE("prime field residues") {
  Scalar a = Scalar::residue(3, 5);
  CHECK(a * a == Scalar::residue(4, 5));
  CHECK(a.inverse() == Scalar::residue(2, 5));
  CHECK(a + 2 == Scalar::residue(0, 5));
  CHECK((a + 2).is_zero());
  CHECK(Scalar(1, 2).in_field(5) == Scalar::residue(3, 5));
  CHECK_THROWS_AS(a + Scalar::residue(1, 7), wha::la::FieldMismatch);
}

TEST_CASE("solve: identity and scalar inverse") {
  Mat id = Mat::identity(3);
  Vec b{1, Scalar(2, 3), -5};
  auto x = wha::la::solve(id, b);
  REQUIRE(x);
  CHECK(*x == b);

  Mat two(1, 1);
  two(0, 0) = 2;
  auto y = wha::la::solve(two, Vec{1});
  REQUIRE(y);
  CHECK((*y)[0] == Scalar(1, 2));
}

TEST_CASE("solve: inconsistent and underdetermined systems") {
  Mat a(2, 2);
  a(0, 0) = 1; a(0, 1) = 1;
  a(1, 0) = 1; a(1, 1) = 1;
  CHECK_FALSE(wha::la::solve(a, Vec{1, 2}));
  auto x = wha::la::solve(a, Vec{3, 3});
  REQUIRE(x);
  CHECK((*x)[0] == 3);
  CHECK((*x)[1] == 0);
  CHECK_THROWS_AS(wha::la::solve(a, Vec{1}), wha::la::DimensionMismatch);
}

TEST_CASE("kernel: zero and identity") {
  CHECK(wha::la::kernel(Mat(2, 2)) == Subspace::full(2));
  CHECK(wha::la::kernel(Mat::identity(3)).dim() == 0);
}

TEST_CASE("property: solve and kernel re-multiply exactly, rank-nullity holds") {
  std::mt19937 rng(7);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    Mat a = random_mat(rng, r, c, -2, 2);
    Subspace k = wha::la::kernel(a);
    CHECK(k.dim() + wha::la::rank(a) == c);
    for (const auto& v : k.basis()) CHECK(wha::la::is_zero(a.apply(v)));
    Vec x0(c);
    for (auto& e : x0) e = static_cast<int>(rng() % 5) - 2;
    Vec b = a.apply(x0);
    auto x = wha::la::solve(a, b);
    REQUIRE(x);
    CHECK(a.apply(*x) == b);
    CHECK(wha::la::solve(a, b) == x);
  }
}

TEST_CASE("inverse of random invertible matrices") {
  std::mt19937 rng(11);
  int found = 0;
  for (int t = 0; t < 30; ++t) {
    Mat a = random_mat(rng, 4, 4, -3, 3);
    auto inv = wha::la::inverse(a);
    if (!inv) {
      CHECK(wha::la::rank(a) < 4);
      continue;
    }
    ++found;
    CHECK(a * *inv == Mat::identity(4));
    CHECK(*inv * a == Mat::identity(4));
  }
  CHECK(found > 0);
}

TEST_CASE("subspace equality is canonical") {
  Subspace s1 = Subspace::span({Vec{1, 1, 0}, Vec{0, 1, 1}}, 3);
  Subspace s2 = Subspace::span({Vec{1, 2, 1}, Vec{1, 0, -1}}, 3);
  CHECK(s1 == s2);
  CHECK(s1.contains(Vec{2, 3, 1}));
  CHECK_FALSE(s1.contains(Vec{1, 0, 0}));
  auto c = s1.coordinates(Vec{2, 3, 1});
  REQUIRE(c);
  CHECK(s1.combine(*c) == Vec{2, 3, 1});
}

TEST_CASE("sum and intersection dimensions") {
  Subspace xy = Subspace::span({Vec{1, 0, 0}, Vec{0, 1, 0}}, 3);
  Subspace yz = Subspace::span({Vec{0, 1, 0}, Vec{0, 0, 1}}, 3);
  CHECK(xy.sum(yz) == Subspace::full(3));
  CHECK(xy.intersect(yz) == Subspace::span({Vec{0, 1, 0}}, 3));
}

TEST_CASE("quotient: trivial relations and a line") {
  auto q0 = wha::la::quotient(3, Subspace(3));
  CHECK(q0.dim() == 3);
  CHECK(q0.project_matrix() == Mat::identity(3));

  auto q1 = wha::la::quotient(2, Subspace::span({Vec{1, -1}}, 2));
  CHECK(q1.dim() == 1);
  CHECK(q1.project(Vec{1, 0}) == q1.project(Vec{0, 1}));
  CHECK(q1.project(Vec{1, -1}) == Vec{0});
}

TEST_CASE("property: project after section is the identity and relations vanish") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + rng() % 5;
    std::vector<Vec> rel;
    for (std::size_t k = 0; k < rng() % n; ++k) {
      Vec v(n);
      for (auto& e : v) e = static_cast<int>(rng() % 5) - 2;
      rel.push_back(v);
    }
    Subspace r = Subspace::span(rel, n);
    auto q = wha::la::quotient(n, r);
    CHECK(q.dim() == n - r.dim());
    CHECK(q.project_matrix() * q.section_matrix() == Mat::identity(q.dim()));
    CHECK(wha::la::rank(q.project_matrix()) == n - r.dim());
    for (const auto& v : r.basis()) CHECK(wha::la::is_zero(q.project(v)));
  }
}

TEST_CASE("tensor square over the ground field does not collapse") {
  // Q^2 (x) Q^2 balanced over Q: relations (n m) (x) m' - m (x) (n m') with n = 1
  // are all zero, so the quotient keeps dimension 4.
  std::vector<Vec> rel;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) rel.push_back(Vec(4));
  auto q = wha::la::quotient(4, Subspace::span(rel, 4));
  CHECK(q.dim() == 4);
}
