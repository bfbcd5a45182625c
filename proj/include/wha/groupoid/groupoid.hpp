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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wha/report.hpp"
#include "wha/whopf/weak_hopf.hpp"

namespace wha {

class InvalidGroupoid : public std::invalid_argument {
 public:
  explicit InvalidGroupoid(const std::string& what) : std::invalid_argument(what) {}
};

struct Morphism {
  std::string name;
  std::size_t source;
  std::size_t target;
};

/// Finite groupoid given by an explicit composition table.
///
/// compose(g, h) = g o h is defined iff source(g) = target(h).
class Groupoid {
 public:
  struct Composition {
    std::size_t g, h, gh;
  };

  /// Verified construction; throws InvalidGroupoid.
  static Groupoid make(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                       const std::vector<Composition>& table);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t size() const { return morphisms_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  std::optional<std::size_t> compose(std::size_t g, std::size_t h) const;
  std::size_t identity(std::size_t object) const { return identities_[object]; }
  bool is_identity(std::size_t g) const;
  std::size_t inverse(std::size_t g) const { return inverses_[g]; }
  std::size_t find(const std::string& name) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::int64_t> table_;  // g * size + h, -1 when undefined
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> inverses_;
};

Groupoid trivial_groupoid();
/// Z_n as a one-object groupoid with morphisms g0..g{n-1}.
Groupoid cyclic_group(std::size_t n);
/// Exactly one morphism between any two of n objects.
Groupoid pair_groupoid(std::size_t n);
Groupoid disjoint_union(const Groupoid& a, const Groupoid& b);

/// kG: product is composition or zero, Delta(g) = g (x) g, eps = 1, S(g) = g^{-1}.
WeakHopf groupoid_algebra(const Groupoid& g, std::uint32_t modulus = 0);
/// (kG)* on the idempotents p_g, built from the explicit formulas. Throws
/// std::logic_error if it differs from dual(groupoid_algebra(g)).
WeakHopf groupoid_dual(const Groupoid& g, std::uint32_t modulus = 0);

struct GroupoidIntegrals {
  std::vector<Vec> left;   // l_e = sum of g with g^{-1} g = e, i.e. source e
  std::vector<Vec> right;  // r_e = sum of g with g g^{-1} = e, i.e. target e
  std::vector<Vec> dual;   // p_e
  Report report;
};

/// Spanning sets of integrals for kG and (kG)*, compared with the integral
/// spaces computed by the weak Hopf engine.
GroupoidIntegrals groupoid_integrals(const Groupoid& g, std::uint32_t modulus = 0);

}  // namespace wha
