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

#include "wha/algebra/algebra.hpp"
#include "wha/algebra/extension.hpp"

using namespace wha;

namespace {

Vec uniform_trace(const Algebra& a, Scalar each) { return Vec(a.dim(), each); }

// Normalized matrix trace on M_n in matrix-unit coordinates.
Vec matrix_trace(std::size_t n) {
  Vec t(n * n);
  for (std::size_t i = 0; i < n; ++i) t[i * n + i] = Scalar(1, static_cast<long long>(n));
  return t;
}

// Transports the structure of `a` along the basis change whose columns are `p`.
Algebra change_basis(const Algebra& a, const Mat& p) {
  auto inv = la::inverse(p);
  REQUIRE(inv);
  std::vector<StructureEntry> st;
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec prod = inv->apply(a.mul(p.column(i), p.column(j)));
      for (std::size_t k = 0; k < d; ++k)
        if (!prod[k].is_zero()) st.push_back({i, j, k, prod[k]});
    }
  return Algebra::make(d, st, inv->apply(a.one()));
}

Vec tensor_left(const Algebra& a, std::span<const Scalar> x, std::span<const Scalar> f) {
  // (x (x) 1) f
  const std::size_t d = a.dim();
  Vec out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (f[i * d + j].is_zero()) continue;
      Vec xi = a.mul(x, a.basis(i));
      for (std::size_t p = 0; p < d; ++p) out[p * d + j] += f[i * d + j] * xi[p];
    }
  return out;
}

Vec tensor_right(const Algebra& a, std::span<const Scalar> f, std::span<const Scalar> x) {
  // f (1 (x) x)
  const std::size_t d = a.dim();
  Vec out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (f[i * d + j].is_zero()) continue;
      Vec jx = a.mul(a.basis(j), x);
      for (std::size_t q = 0; q < d; ++q) out[i * d + q] += f[i * d + j] * jx[q];
    }
  return out;
}

}  // namespace

TEST_CASE("structure-constant algebras: unit, associativity, basic examples") {
  Algebra k = ground_field();
  CHECK(k.dim() == 1);
  CHECK(center(k).dim() == 1);
  Algebra q2 = diagonal_algebra(2);
  CHECK(center(q2).dim() == 2);
  Algebra m2 = matrix_algebra(2);
  Subspace z = center(m2);
  REQUIRE(z.dim() == 1);
  CHECK(z.contains(m2.one()));
  CHECK(m2.associativity_failure() == std::nullopt);

  // e11 e12 = e12, e12 e11 = 0
  CHECK(m2.mul(m2.basis(0), m2.basis(1)) == m2.basis(1));
  CHECK(la::is_zero(m2.mul(m2.basis(1), m2.basis(0))));

  // k[x]/(x^2 - x - 1)
  std::vector<StructureEntry> golden{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}};
  CHECK_NOTHROW(Algebra::make(2, golden, Vec{1, 0}));
  CHECK_THROWS_AS(Algebra::make(2, golden, Vec{0, 1}), BadUnit);
  std::vector<StructureEntry> skew{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 2, 1, 1},
                                   {0, 2, 2, 1}, {2, 0, 2, 1}, {2, 1, 1, 1}};
  CHECK_THROWS_AS(Algebra::make(3, skew, Vec{1, 0, 0}), NotAssociative);
}

TEST_CASE("tensor and opposite algebras") {
  Algebra m2 = matrix_algebra(2);
  Algebra t = tensor(m2, diagonal_algebra(2));
  CHECK(t.dim() == 8);
  CHECK(center(t).dim() == 2);
  Algebra op = opposite(m2);
  CHECK(op.mul(op.basis(1), op.basis(0)) == m2.mul(m2.basis(0), m2.basis(1)));
}

TEST_CASE("centralizers and generated subalgebras") {
  Algebra m2 = matrix_algebra(2);
  Vec diag = m2.basis(0);
  Subspace c = centralizer(m2, std::vector<Vec>{diag});
  CHECK(c.dim() == 2);  // diagonal matrices
  CHECK(c.contains(m2.basis(3)));
  Subspace g = generated_subalgebra(m2, {m2.basis(1), m2.basis(2)});
  CHECK(g.dim() == 4);
  Algebra diag_alg = m2.induced(c);
  CHECK(diag_alg.dim() == 2);
  CHECK(center(diag_alg).dim() == 2);
  CHECK_THROWS_AS(m2.induced(Subspace::span({m2.basis(1)}, 4)), NotClosed);
}

TEST_CASE("dual bases for the diagonal extension") {
  Algebra q2 = diagonal_algebra(2);
  auto e = scalar_extension(q2, uniform_trace(q2, Scalar(1, 2)));
  auto db = find_dual_bases(e);
  REQUIRE(db);
  REQUIRE(db->lambda_inv);
  CHECK(*db->lambda_inv == Scalar(2));
  CHECK(dual_bases_violation(e, *db) == std::nullopt);
}

TEST_CASE("dual bases for M2 over the field have index 4") {
  Algebra m2 = matrix_algebra(2);
  auto e = scalar_extension(m2, matrix_trace(2));
  auto db = find_dual_bases(e);
  REQUIRE(db);
  REQUIRE(db->lambda_inv);
  CHECK(*db->lambda_inv == Scalar(4));
  // Oracle: x = e_ij, y = 2 e_ji.
  DualBases hand;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      hand.xs.push_back(m2.basis(i * 2 + j));
      hand.ys.push_back(la::scaled(2, m2.basis(j * 2 + i)));
    }
  CHECK(dual_bases_violation(e, hand) == std::nullopt);
  hand.ys[0] = la::scaled(3, m2.basis(0));
  CHECK(dual_bases_violation(e, hand).has_value());
}

TEST_CASE("dual bases restricted to a subspace that is too small fail") {
  Algebra m2 = matrix_algebra(2);
  auto e = scalar_extension(m2, matrix_trace(2));
  auto db = find_dual_bases(e, Subspace::span({m2.basis(0), m2.basis(3)}, 4));
  CHECK_FALSE(db);
  CHECK_FALSE(db.failure.empty());
}

TEST_CASE("symmetry: trace is symmetric, skewed expectation is not") {
  Algebra m2 = matrix_algebra(2);
  auto e = scalar_extension(m2, matrix_trace(2));
  CHECK(is_symmetric(e, Subspace::full(4)).symmetric);
  // E'(x) = E(d x) with d = [[1,1],[0,1]].
  Vec d{1, 1, 0, 1};
  Mat skew(1, 4);
  for (std::size_t i = 0; i < 4; ++i) skew(0, i) = la::dot(matrix_trace(2), m2.mul(d, m2.basis(i)));
  auto e2 = CondExpectation::make(e.incl, skew);
  auto r = is_symmetric(e2, Subspace::full(4));
  CHECK_FALSE(r.symmetric);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("Kanzaki elements: diagonal, matrix, and the F_2 obstruction") {
  Algebra q2 = diagonal_algebra(2);
  auto f = kanzaki_element(q2);
  REQUIRE(f);
  CHECK(f->unique);
  CHECK(f->coeffs(0, 0) == Scalar(1));
  CHECK(f->coeffs(1, 1) == Scalar(1));
  CHECK(f->coeffs(0, 1).is_zero());

  Algebra m2 = matrix_algebra(2);
  auto g = kanzaki_element(m2);
  REQUIRE(g);
  CHECK(g->unique);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          Scalar want = (k == j && l == i) ? Scalar(1, 2) : Scalar(0);
          CHECK(g->coeffs(i * 2 + j, k * 2 + l) == want);
        }

  Algebra m2f2 = matrix_algebra(2, 2);
  CHECK_FALSE(kanzaki_element(m2f2));
  CHECK(separability_element(m2f2));  // separable, but not symmetrically
  Algebra q2f2 = diagonal_algebra(2, 2);
  CHECK(kanzaki_element(q2f2));
}

TEST_CASE("Kanzaki element is basis independent (property)") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-2, 2);
  Algebra m2 = matrix_algebra(2);
  int tried = 0;
  while (tried < 6) {
    Mat p(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) p(i, j) = dist(rng);
    if (la::rank(p) < 4) continue;
    ++tried;
    Algebra a = change_basis(m2, p);
    auto f = kanzaki_element(a);
    REQUIRE(f);
    CHECK(f->unique);
    Vec t = f->tensor();
    for (std::size_t g = 0; g < a.dim(); ++g)
      CHECK(tensor_left(a, a.basis(g), t) == tensor_right(a, t, a.basis(g)));
    Vec mu(a.dim());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) la::axpy(t[i * 4 + j], a.mul(a.basis(i), a.basis(j)), mu);
    CHECK(mu == a.one());
  }
}

TEST_CASE("functional dual bases of a trace") {
  Algebra m2 = matrix_algebra(2);
  auto db = functional_dual_bases(m2, matrix_trace(2));
  REQUIRE(db);
  for (std::size_t a = 0; a < 4; ++a) {
    Vec acc(4), acc2(4);
    for (std::size_t i = 0; i < db->size(); ++i) {
      la::axpy(la::dot(matrix_trace(2), m2.mul(m2.basis(a), db->xs[i])), db->ys[i], acc);
      la::axpy(la::dot(matrix_trace(2), m2.mul(db->ys[i], m2.basis(a))), db->xs[i], acc2);
    }
    CHECK(acc == m2.basis(a));
    CHECK(acc2 == m2.basis(a));
  }
  Vec degenerate{1, 0, 0, 0};
  CHECK_FALSE(functional_dual_bases(m2, degenerate));
}

TEST_CASE("Markov certification of the standard small extensions") {
  Vec one_trace{1};
  {
    Algebra q2 = diagonal_algebra(2);
    auto e = scalar_extension(q2, uniform_trace(q2, Scalar(1, 2)));
    auto db = find_dual_bases(e);
    REQUIRE(db);
    auto c = certify_markov(e, *db, one_trace);
    CHECK(c.certified());
    CHECK(c.lambda() == Scalar(1, 2));
    CHECK(casimir_shift_check(c));
  }
  {
    Algebra m2 = matrix_algebra(2);
    auto e = scalar_extension(m2, matrix_trace(2));
    auto db = find_dual_bases(e);
    REQUIRE(db);
    auto c = certify_markov(e, *db, one_trace);
    CHECK(c.certified());
    CHECK(c.lambda() == Scalar(1, 4));
    CHECK(casimir_shift_check(c));
  }
  {
    // Q^2 -> M_2 as diagonal matrices with E the diagonal projection.
    Algebra q2 = diagonal_algebra(2);
    Algebra m2 = matrix_algebra(2);
    Mat embed(4, 2);
    embed(0, 0) = 1;
    embed(3, 1) = 1;
    auto inc = Inclusion::make(q2, m2, embed);
    Mat map(2, 4);
    map(0, 0) = 1;
    map(1, 3) = 1;
    auto e = CondExpectation::make(inc, map);
    auto db = find_dual_bases(e);
    REQUIRE(db);
    REQUIRE(db->lambda_inv);
    CHECK(*db->lambda_inv == Scalar(2));
    auto c = certify_markov(e, *db, Vec{Scalar(1, 2), Scalar(1, 2)});
    CHECK(c.strongly_separable);
    CHECK(c.markov);
    CHECK(c.symmetric);
  }
}

TEST_CASE("skewed expectation fails symmetry in the certificate") {
  Algebra m2 = matrix_algebra(2);
  auto base = scalar_extension(m2, matrix_trace(2));
  Vec d{1, 1, 0, 1};
  Mat skew(1, 4);
  for (std::size_t i = 0; i < 4; ++i) skew(0, i) = la::dot(matrix_trace(2), m2.mul(d, m2.basis(i)));
  auto e = CondExpectation::make(base.incl, skew);
  auto db = find_dual_bases(e);
  REQUIRE(db);
  auto c = certify_markov(e, *db, Vec{1});
  CHECK_FALSE(c.symmetric);
  CHECK_FALSE(c.certified());
  CHECK(c.report.find("symmetric-expectation") != nullptr);
}

TEST_CASE("relative tensor product dimensions") {
  Algebra m2 = matrix_algebra(2);
  auto e = scalar_extension(m2, matrix_trace(2));
  RelativeTensor t(e.incl);
  CHECK(t.dim() == 16);
  Algebra q2 = diagonal_algebra(2);
  Mat embed(4, 2);
  embed(0, 0) = 1;
  embed(3, 1) = 1;
  RelativeTensor t2(Inclusion::make(q2, m2, embed));
  // M_2 (x)_{Q^2} M_2 = sum over k of (column k) (x) (row k): dimension 8.
  CHECK(t2.dim() == 8);
}
