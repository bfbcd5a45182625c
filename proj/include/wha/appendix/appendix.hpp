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
#include <stdexcept>
#include <string>
#include <vector>

#include "wha/markov/examples.hpp"
#include "wha/markov/tower.hpp"

namespace wha {

/// Word e_{w[0]} e_{w[1]} ... in the Jones idempotents (indices from 1).
using Word = std::vector<std::size_t>;

/// Product of the word inside level `at` of the tower (1 for the empty word).
Vec evaluate_word(const Tower& t, const Word& w, std::size_t at);

class NotInTLSubalgebra : public std::invalid_argument {
 public:
  explicit NotInTLSubalgebra(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionBudget : public std::invalid_argument {
 public:
  explicit DimensionBudget(const std::string& what) : std::invalid_argument(what) {}
};

/// Words in e_1..e_n whose values at level `at` form a basis of the
/// subalgebra they generate (1 included as the empty word).
std::vector<Word> tl_basis_words(const Tower& t, std::size_t n, std::size_t at);

struct Shifted {
  Vec image;  // at the same level
  Report report;
};

/// tau^2: e_i -> e_{i+2} applied to x in the span of words in e_1..e_n at
/// level `at` (which must be >= n + 2). The report checks that the shifted
/// generators obey the same relations and that every linear relation among
/// the basis words survives the shift.
Shifted shift_tau2(const Tower& t, std::span<const Scalar> x, std::size_t n, std::size_t at);

/// (e_{n+1} ... e_1)(e_{n+2} ... e_2) ... (e_{2n+1} ... e_{n+1}) scaled by
/// lambda^{-n(n+1)/2}, in M_{2n+1}.
struct CompositeData {
  std::size_t n = 0;
  Vec f;
  Mat F_n;    // M_n -> N
  Mat F_M_n;  // M_{2n+1} -> M_n
  Scalar expectation_value;  // c with F_{M_n}(f_n) = c 1, when scalar
  Report report;
};

/// Requires a tower to level 2n+1 whose top algebra has dim <= max_dim
/// (throws DimensionBudget otherwise).
CompositeData composite_idempotent(const Tower& t, std::size_t n, std::size_t max_dim = 64);

/// M = N (x) U with E(n u) = lambda n t(u), where t is the trace whose dual
/// bases form the symmetric separability element of U and lambda^{-1} = t(1).
struct Depth2Example {
  MarkovExample ext;
  std::vector<Vec> xs, ys;  // dual bases of E inside U, elements of M
  bool center_condition = false;  // Z(U) = Z(N) = k
};

/// Throws InvalidExtension when N is not central or U is not Kanzaki
/// separable. A larger center of U is allowed and recorded.
Depth2Example tensor_depth2_example(const Algebra& N, Vec trace_N, const Algebra& U);
/// Q in M_n(Q) (or over F_p).
Depth2Example matrix_depth2_example(std::size_t n, std::uint32_t modulus = 0);

/// Certifies the extension, builds its tower to M_2 and runs depth2_check.
/// Under the center condition it also checks the V-valued dual bases
/// x'_i = x_j x_i e_1 y_j, y'_i = x_k y_i e_1 y_k of E_M.
Report verify_depth2_example(const Depth2Example& ex);

}  // namespace wha
