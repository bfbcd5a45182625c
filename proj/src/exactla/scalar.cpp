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

#include "wha/exactla/scalar.hpp"

#include <limits>
#include <numeric>
#include <ostream>

namespace wha::la {

namespace {

using i128 = __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v > kMin && v <= kMax; }

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpq_class mpq_from(i128 n, i128 d) {
  mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
  q.canonicalize();
  return q;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r < 0) new_r += p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw DivisionByZero();
  return t < 0 ? t + p : t;
}

std::int64_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r.get_si());
}

}  // namespace

Scalar::Scalar(long long n) : num_(n) {
  if (n == kMin) set_big(mpq_class(mpz_from_i128(n)));
}

Scalar::Scalar(long long num, long long den) {
  if (den == 0) throw DivisionByZero();
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(num, den);
  n /= g;
  d /= g;
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    set_big(mpq_from(n, d));
  }
}

Scalar::Scalar(const mpq_class& q) { set_big(q); }

Scalar Scalar::residue(long long value, std::uint32_t prime) {
  if (prime < 2) throw std::invalid_argument("residue modulus must be a prime >= 2");
  Scalar s;
  std::int64_t r = value % static_cast<std::int64_t>(prime);
  if (r < 0) r += prime;
  s.num_ = r;
  s.mod_ = prime;
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty scalar literal");
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : trim(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
  auto strip_plus = [](std::string_view s) {
    return (!s.empty() && s.front() == '+') ? s.substr(1) : s;
  };
  mpz_class n(std::string(strip_plus(num)));
  mpz_class d(std::string(strip_plus(den)));
  if (d == 0) throw DivisionByZero();
  mpq_class q(n, d);
  q.canonicalize();
  return Scalar(q);
}

void Scalar::set_big(mpq_class q) {
  big_ = std::make_shared<const mpq_class>(std::move(q));
  mod_ = 0;
  normalize_big();
}

void Scalar::normalize_big() {
  const mpq_class& q = *big_;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    long n = q.get_num().get_si();
    long d = q.get_den().get_si();
    if (n != kMin) {
      num_ = n;
      den_ = d;
      big_.reset();
    }
  }
}

void Scalar::align(Scalar& a, Scalar& b) {
  if (a.mod_ == b.mod_) return;
  if (a.mod_ == 0) {
    a = a.in_field(b.mod_);
  } else if (b.mod_ == 0) {
    b = b.in_field(a.mod_);
  } else {
    throw FieldMismatch("mixing residues modulo " + std::to_string(a.mod_) + " and " +
                        std::to_string(b.mod_));
  }
}

Scalar Scalar::in_field(std::uint32_t prime) const {
  if (prime == 0) {
    if (mod_ != 0) throw FieldMismatch("cannot lift a residue to the rationals");
    return *this;
  }
  if (mod_ == prime) return *this;
  if (mod_ != 0) throw FieldMismatch("residue moduli differ");
  std::int64_t n, d;
  if (big_) {
    n = reduce_mod(big_->get_num(), prime);
    d = reduce_mod(big_->get_den(), prime);
  } else {
    n = num_ % static_cast<std::int64_t>(prime);
    if (n < 0) n += prime;
    d = den_ % static_cast<std::int64_t>(prime);
  }
  if (d == 0) throw DivisionByZero();
  std::int64_t v = (n * mod_inverse(d, prime)) % prime;
  return residue(v, prime);
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  if (mod_ != 0) return mpq_class(mpz_from_i128(num_));
  mpq_class q(mpz_from_i128(num_), mpz_from_i128(den_));
  return q;
}

std::string Scalar::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (mod_ != 0) {
    r.num_ = num_ == 0 ? 0 : static_cast<std::int64_t>(mod_) - num_;
  } else if (big_) {
    r.set_big(-*big_);
  } else if (num_ == kMin + 1 || num_ == kMin) {
    r.set_big(-to_mpq());
  } else {
    r.num_ = -num_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o_in) {
  Scalar o = o_in;
  align(*this, o);
  if (mod_ != 0) {
    num_ = (num_ + o.num_) % mod_;
    return *this;
  }
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != kMin) {
        num_ = s;
        return *this;
      }
      set_big(to_mpq() + o.to_mpq());
      return *this;
    }
    std::int64_t g = std::gcd(den_, o.den_);
    i128 t = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
    if (t == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    std::int64_t g2 = g == 1 ? 1 : std::gcd(static_cast<std::int64_t>(t % g), g);
    if (g2 < 0) g2 = -g2;
    if (g2 == 0) g2 = g;
    i128 n = t / g2;
    i128 d = static_cast<i128>(den_ / g) * (o.den_ / g2);
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      set_big(mpq_from(n, d));
    }
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o_in) {
  Scalar o = o_in;
  align(*this, o);
  if (mod_ != 0) {
    num_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(num_) *
                                      static_cast<std::uint64_t>(o.num_)) %
                                     mod_);
    return *this;
  }
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    i128 n = static_cast<i128>(num_ / g1) * (o.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (o.den_ / g1);
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      set_big(mpq_from(n, d));
    }
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (mod_ != 0) return residue(mod_inverse(num_, mod_), mod_);
  if (big_) return Scalar(mpq_class(1) / *big_);
  return Scalar(den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& o_in) {
  Scalar o = o_in;
  align(*this, o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a_in, const Scalar& b_in) {
  if (a_in.mod_ == b_in.mod_) {
    if (a_in.big_ || b_in.big_) {
      if (a_in.big_ && b_in.big_) return *a_in.big_ == *b_in.big_;
      return false;
    }
    return a_in.num_ == b_in.num_ && a_in.den_ == b_in.den_;
  }
  Scalar a = a_in, b = b_in;
  Scalar::align(a, b);
  return a.num_ == b.num_;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = mod_ != 0 ? residue(1, mod_) : Scalar(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace wha::la
