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

#include "wha/appendix/appendix.hpp"

using namespace wha;

namespace {

Tower q_in_q2(std::size_t depth) { return build_tower(certify(markov_example("q-in-q2")), depth); }

}  // namespace

TEST_CASE("composite idempotents f_0, f_1, f_2") {
  Tower t = q_in_q2(5);
  const Scalar expected[] = {Scalar(1, 2), Scalar(1, 4), Scalar(1, 8)};
  for (std::size_t n = 0; n <= 2; ++n) {
    CompositeData c = composite_idempotent(t, n);
    INFO("n = " << n << "\n" << c.report.text());
    CHECK(c.report.all_passed());
    CHECK(c.expectation_value == expected[n]);
    // Independent oracle: f_n is idempotent at level 2n+1 and its trace is
    // lambda^{n+1}.
    const Algebra& a = t.algebra(static_cast<int>(2 * n + 1));
    CHECK(a.mul(c.f, c.f) == c.f);
    CHECK(la::dot(t.trace(static_cast<int>(2 * n + 1)), c.f) == expected[n]);
  }
}

TEST_CASE("f_0 is the first jones projection") {
  Tower t = q_in_q2(1);
  CompositeData c = composite_idempotent(t, 0);
  CHECK(c.f == t.jones(1, 1));
}

TEST_CASE("composite idempotent respects the dimension budget") {
  Tower t = q_in_q2(5);
  CHECK_NOTHROW(composite_idempotent(t, 1, 16));
  CHECK_THROWS_AS(composite_idempotent(t, 2, 16), DimensionBudget);
}

TEST_CASE("tau2 shifts jones projections by two") {
  Tower t = q_in_q2(4);
  Vec e1 = t.jones(1, 4), e2 = t.jones(2, 4), e3 = t.jones(3, 4), e4 = t.jones(4, 4);
  const Algebra& a = t.algebra(4);

  Shifted s1 = shift_tau2(t, e1, 1, 4);
  INFO(s1.report.text());
  CHECK(s1.report.all_passed());
  CHECK(s1.image == e3);

  Shifted s2 = shift_tau2(t, a.mul({e1, e2, e1}), 2, 4);
  CHECK(s2.report.all_passed());
  CHECK(s2.image == la::scaled(t.lambda(), e3));

  Shifted s3 = shift_tau2(t, a.mul(e2, e1), 2, 4);
  CHECK(s3.image == a.mul(e4, e3));

  Shifted one = shift_tau2(t, a.one(), 1, 4);
  CHECK(one.image == a.one());
}

TEST_CASE("tau2 is multiplicative on words (property)") {
  Tower t = q_in_q2(4);
  const Algebra& a = t.algebra(4);
  auto words = tl_basis_words(t, 2, 4);
  // Index 2 is a degenerate value: one Catalan word is dependent.
  CHECK(words.size() == 4);
  for (const auto& u : words)
    for (const auto& v : words) {
      Vec x = evaluate_word(t, u, 4), y = evaluate_word(t, v, 4);
      Vec lhs = shift_tau2(t, a.mul(x, y), 2, 4).image;
      Vec rhs = a.mul(shift_tau2(t, x, 2, 4).image, shift_tau2(t, y, 2, 4).image);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("tau2 rejects elements outside the Temperley-Lieb span") {
  Tower t = q_in_q2(3);
  Vec p = t.lift_matrix(0, 3).apply(la::unit_vector(2, 0));
  CHECK_THROWS_AS(shift_tau2(t, p, 1, 3), NotInTLSubalgebra);
  CHECK_THROWS_AS(shift_tau2(t, t.jones(1, 3), 2, 3), std::invalid_argument);
}

TEST_CASE("tensor depth two examples (property)") {
  struct Case {
    Algebra N;
    Vec trace;
    Algebra U;
    bool center;
  };
  const Scalar half(1, 2);
  std::vector<Case> cases = {
      {ground_field(), Vec{Scalar(1)}, diagonal_algebra(2), false},
      {ground_field(), Vec{Scalar(1)}, matrix_algebra(2), true},
      {ground_field(), Vec{Scalar(1)}, diagonal_algebra(3), false},
      {matrix_algebra(2), Vec{half, 0, 0, half}, diagonal_algebra(2), false},
  };
  for (const auto& c : cases) {
    Depth2Example ex = tensor_depth2_example(c.N, c.trace, c.U);
    CHECK(ex.center_condition == c.center);
    CHECK(ex.ext.expectation.incl.big.dim() == c.N.dim() * c.U.dim());
    Report r = verify_depth2_example(ex);
    INFO(ex.ext.name << "\n" << r.text());
    CHECK(r.all_passed());
  }
}

TEST_CASE("matrix depth two examples") {
  Report r = verify_depth2_example(matrix_depth2_example(2));
  INFO(r.text());
  CHECK(r.all_passed());
  Report r3 = verify_depth2_example(matrix_depth2_example(2, 3));
  INFO(r3.text());
  CHECK(r3.all_passed());
  CHECK_THROWS_AS(matrix_depth2_example(2, 2), InvalidExtension);
  CHECK_THROWS_AS(tensor_depth2_example(diagonal_algebra(2), Vec{Scalar(1, 2), Scalar(1, 2)}, matrix_algebra(2)),
                  InvalidExtension);
}
