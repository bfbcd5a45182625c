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
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wha::la {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in exact field") {}
};

class FieldMismatch : public std::invalid_argument {
 public:
  explicit FieldMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Element of an exact field: a rational number, or a residue modulo a prime.
///
/// Rationals are kept as a reduced int64 pair while they fit and spill into a
/// GMP rational otherwise. A residue carries its modulus; mixing a residue
/// with a rational coerces the rational into the prime field (so integer
/// literals work in both settings), while mixing two different moduli throws
/// FieldMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n);  // NOLINT(google-explicit-constructor)
  Scalar(long long num, long long den);
  explicit Scalar(const mpq_class& q);

  static Scalar residue(long long value, std::uint32_t prime);

  /// Parses "n", "-n", "n/d"; throws std::invalid_argument on malformed text.
  static Scalar parse(std::string_view text);

  /// 0 for rationals, p for residues mod p.
  std::uint32_t modulus() const { return mod_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  Scalar inverse() const;
  /// This value mapped into F_p (identity on residues of the same prime).
  Scalar in_field(std::uint32_t prime) const;

  mpq_class to_mpq() const;
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Power with integer exponent (negative exponents invert).
  Scalar pow(int e) const;

 private:
  void set_big(mpq_class q);
  void normalize_big();
  static void align(Scalar& a, Scalar& b);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::uint32_t mod_ = 0;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace wha::la
