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

#include "wha/algebra/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "wha/exactla/echelon.hpp"
#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {

// Adds a * v into the dense accumulator.
void accumulate(Vec& acc, const Scalar& a, const SparseVec& v) {
  for (const auto& [k, c] : v) acc[k] += a * c;
}

SparseVec from_unsorted(std::vector<std::pair<std::uint32_t, Scalar>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (auto& [i, v] : entries) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += v;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!v.is_zero()) {
      out.emplace_back(i, std::move(v));
    }
  }
  return out;
}

}  // namespace

NotAssociative::NotAssociative(std::size_t i_, std::size_t j_, std::size_t k_)
    : std::invalid_argument("structure constants are not associative on basis triple (" +
                            std::to_string(i_) + ", " + std::to_string(j_) + ", " +
                            std::to_string(k_) + ")"),
      i(i_),
      j(j_),
      k(k_) {}

BadUnit::BadUnit(std::size_t i_)
    : std::invalid_argument("unit vector does not act as identity on basis element " +
                            std::to_string(i_)),
      i(i_) {}

Algebra::Algebra() : d_(std::make_shared<Data>()) {}

Algebra Algebra::from_products(std::size_t dim, std::vector<SparseVec> products, Vec unit,
                               std::vector<std::string> labels, std::uint32_t modulus) {
  if (products.size() != dim * dim) throw la::DimensionMismatch("algebra: product table size");
  if (unit.size() != dim) throw la::DimensionMismatch("algebra: unit length");
  if (!labels.empty() && labels.size() != dim)
    throw la::DimensionMismatch("algebra: label count");
  if (labels.empty())
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
  auto d = std::make_shared<Data>();
  d->dim = dim;
  d->products = std::move(products);
  d->unit = std::move(unit);
  d->labels = std::move(labels);
  d->modulus = modulus;
  return Algebra(std::move(d));
}

Algebra Algebra::make(std::size_t dim, const std::vector<StructureEntry>& structure, Vec unit,
                      std::vector<std::string> labels, std::uint32_t modulus) {
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> raw(dim * dim);
  for (const auto& e : structure) {
    if (e.i >= dim || e.j >= dim || e.k >= dim)
      throw la::DimensionMismatch("algebra: structure index out of range");
    Scalar v = modulus ? e.value.in_field(modulus) : e.value;
    raw[e.i * dim + e.j].emplace_back(static_cast<std::uint32_t>(e.k), v);
  }
  std::vector<SparseVec> products;
  products.reserve(raw.size());
  for (auto& r : raw) products.push_back(from_unsorted(std::move(r)));
  if (modulus)
    for (auto& u : unit) u = u.in_field(modulus);
  Algebra a = from_products(dim, std::move(products), std::move(unit), std::move(labels), modulus);
  if (auto f = a.associativity_failure()) {
    auto [i, j, k] = *f;
    throw NotAssociative(i, j, k);
  }
  if (auto f = a.unit_failure()) throw BadUnit(*f);
  return a;
}

Scalar Algebra::scalar(long long n) const {
  return modulus() ? Scalar::residue(n, modulus()) : Scalar(n);
}

std::vector<StructureEntry> Algebra::structure() const {
  std::vector<StructureEntry> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [k, v] : product(i, j)) out.push_back({i, j, k, v});
  return out;
}

Vec Algebra::mul(std::span<const Scalar> x, std::span<const Scalar> y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw la::DimensionMismatch("algebra: element length");
  Vec out(n);
  std::vector<std::size_t> ynz;
  for (std::size_t j = 0; j < n; ++j)
    if (!y[j].is_zero()) ynz.push_back(j);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j : ynz) {
      const SparseVec& p = d_->products[i * n + j];
      if (p.empty()) continue;
      accumulate(out, x[i] * y[j], p);
    }
  }
  return out;
}

Vec Algebra::mul(std::initializer_list<Vec> factors) const {
  if (factors.size() == 0) return one();
  auto it = factors.begin();
  Vec acc = *it++;
  for (; it != factors.end(); ++it) acc = mul(acc, *it);
  return acc;
}

Vec Algebra::mul_basis_left(std::size_t i, std::span<const Scalar> y) const {
  const std::size_t n = dim();
  Vec out(n);
  for (std::size_t j = 0; j < n; ++j)
    if (!y[j].is_zero()) accumulate(out, y[j], d_->products[i * n + j]);
  return out;
}

Vec Algebra::mul_basis_right(std::span<const Scalar> x, std::size_t j) const {
  const std::size_t n = dim();
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!x[i].is_zero()) accumulate(out, x[i], d_->products[i * n + j]);
  return out;
}

Mat Algebra::left_matrix(std::span<const Scalar> x) const {
  Mat m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, mul_basis_right(x, j));
  return m;
}

Mat Algebra::right_matrix(std::span<const Scalar> x) const {
  Mat m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, mul_basis_left(j, x));
  return m;
}

bool Algebra::commute(std::span<const Scalar> x, std::span<const Scalar> y) const {
  return mul(x, y) == mul(y, x);
}

std::optional<Vec> Algebra::inverse(std::span<const Scalar> x) const {
  auto y = la::solve(left_matrix(x), one());
  if (!y) return std::nullopt;
  if (mul(*y, x) != one()) return std::nullopt;
  return y;
}

std::optional<Scalar> Algebra::as_scalar(std::span<const Scalar> x) const {
  // 1 has some nonzero coordinate; read the candidate scalar there.
  std::size_t p = 0;
  while (p < dim() && one()[p].is_zero()) ++p;
  if (p == dim()) return std::nullopt;
  Scalar c = x[p] / one()[p];
  if (la::scaled(c, one()) != Vec(x.begin(), x.end())) return std::nullopt;
  return c;
}

std::optional<std::tuple<std::size_t, std::size_t, std::size_t>>
Algebra::associativity_failure() const {
  const std::size_t n = dim();
  auto f = kernels::find_first_failure(n * n * n, [&](std::size_t t) -> std::optional<std::string> {
    std::size_t i = t / (n * n), j = (t / n) % n, k = t % n;
    Vec lhs(n), rhs(n);
    for (const auto& [m, c] : product(i, j)) accumulate(lhs, c, product(m, k));
    for (const auto& [m, c] : product(j, k)) accumulate(rhs, c, product(i, m));
    if (lhs == rhs) return std::nullopt;
    return std::string();
  });
  if (!f) return std::nullopt;
  return std::make_tuple(f->index / (n * n), (f->index / n) % n, f->index % n);
}

std::optional<std::size_t> Algebra::unit_failure() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    Vec e = basis(i);
    if (mul(one(), e) != e || mul(e, one()) != e) return i;
  }
  return std::nullopt;
}

bool Algebra::is_subalgebra(const Subspace& s) const {
  if (!s.contains(one())) return false;
  auto b = s.basis();
  for (const auto& x : b)
    for (const auto& y : b)
      if (!s.contains(mul(x, y))) return false;
  return true;
}

Algebra Algebra::induced(const Subspace& s) const {
  if (s.ambient() != dim()) throw la::DimensionMismatch("induced: ambient mismatch");
  auto b = s.basis();
  const std::size_t m = b.size();
  std::vector<SparseVec> products(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto c = s.coordinates(mul(b[i], b[j]));
      if (!c) throw NotClosed("induced: subspace is not closed under multiplication");
      products[i * m + j] = la::to_sparse(*c);
    }
  auto u = s.coordinates(one());
  if (!u) throw NotClosed("induced: subspace does not contain the unit");
  return from_products(m, std::move(products), *u, {}, modulus());
}

std::string Algebra::element_to_string(std::span<const Scalar> x) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (!x[i].is_one()) os << x[i] << "*";
    os << (i < labels().size() ? labels()[i] : "b" + std::to_string(i));
  }
  if (first) os << "0";
  return os.str();
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.d_ == b.d_) return true;
  return a.dim() == b.dim() && a.d_->products == b.d_->products && a.one() == b.one();
}

Algebra ground_field(std::uint32_t modulus) {
  Scalar one = modulus ? Scalar::residue(1, modulus) : Scalar(1);
  return Algebra::from_products(1, {SparseVec{{0, one}}}, Vec{one}, {"1"}, modulus);
}

Algebra diagonal_algebra(std::size_t n, std::uint32_t modulus) {
  Scalar one = modulus ? Scalar::residue(1, modulus) : Scalar(1);
  std::vector<SparseVec> p(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    p[i * n + i] = SparseVec{{static_cast<std::uint32_t>(i), one}};
    labels.push_back("p" + std::to_string(i + 1));
  }
  return Algebra::from_products(n, std::move(p), Vec(n, one), std::move(labels), modulus);
}

Algebra matrix_algebra(std::size_t n, std::uint32_t modulus) {
  Scalar one = modulus ? Scalar::residue(1, modulus) : Scalar(1);
  const std::size_t d = n * n;
  std::vector<SparseVec> p(d * d);
  std::vector<std::string> labels;
  Vec unit(d);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i * n + i] = one;
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      for (std::size_t l = 0; l < n; ++l)
        p[(i * n + j) * d + (j * n + l)] = SparseVec{{static_cast<std::uint32_t>(i * n + l), one}};
    }
  }
  return Algebra::from_products(d, std::move(p), std::move(unit), std::move(labels), modulus);
}

Algebra opposite(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<SparseVec> p(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] = a.product(j, i);
  return Algebra::from_products(n, std::move(p), a.one(), a.labels(), a.modulus());
}

Vec kron_vec(std::span<const Scalar> x, std::span<const Scalar> y) {
  Vec out(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero()) out[i * y.size() + j] = x[i] * y[j];
  }
  return out;
}

Algebra tensor(const Algebra& a, const Algebra& b) {
  const std::size_t n = a.dim(), m = b.dim(), d = n * m;
  std::vector<SparseVec> p(d * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const SparseVec& pa = a.product(i, k);
      if (pa.empty()) continue;
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) {
          const SparseVec& pb = b.product(j, l);
          if (pb.empty()) continue;
          SparseVec out;
          for (const auto& [r, x] : pa)
            for (const auto& [s, y] : pb) out.emplace_back(r * m + s, x * y);
          p[(i * m + j) * d + (k * m + l)] = std::move(out);
        }
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) labels.push_back(a.labels()[i] + "*" + b.labels()[j]);
  return Algebra::from_products(d, std::move(p), kron_vec(a.one(), b.one()), std::move(labels),
                                a.modulus());
}

SparseVec tensor_mul(const Algebra& a, std::size_t legs, const SparseVec& x, const SparseVec& y) {
  const std::size_t n = a.dim();
  std::vector<std::pair<std::uint32_t, Scalar>> acc;
  std::vector<std::size_t> xi(legs), yi(legs);
  for (const auto& [ix, vx] : x) {
    std::size_t t = ix;
    for (std::size_t l = legs; l-- > 0;) {
      xi[l] = t % n;
      t /= n;
    }
    for (const auto& [iy, vy] : y) {
      std::size_t s = iy;
      for (std::size_t l = legs; l-- > 0;) {
        yi[l] = s % n;
        s /= n;
      }
      // Expand the product of the legs one at a time.
      std::vector<std::pair<std::uint32_t, Scalar>> partial{{0, vx * vy}};
      for (std::size_t l = 0; l < legs && !partial.empty(); ++l) {
        const SparseVec& p = a.product(xi[l], yi[l]);
        std::vector<std::pair<std::uint32_t, Scalar>> next;
        next.reserve(partial.size() * p.size());
        for (const auto& [pi, pv] : partial)
          for (const auto& [k, c] : p)
            next.emplace_back(static_cast<std::uint32_t>(pi * n + k), pv * c);
        partial = std::move(next);
      }
      acc.insert(acc.end(), partial.begin(), partial.end());
    }
  }
  return from_unsorted(std::move(acc));
}

Subspace centralizer(const Algebra& big, const std::vector<Vec>& generators) {
  std::vector<SparseVec> rows;
  const std::size_t n = big.dim();
  for (const auto& s : generators) {
    // Column j of (L_s - R_s) is s e_j - e_j s.
    Mat c(n, n);
    for (std::size_t j = 0; j < n; ++j) c.set_column(j, la::sub(big.mul_basis_right(s, j),
                                                                big.mul_basis_left(j, s)));
    for (std::size_t i = 0; i < n; ++i) {
      auto r = la::to_sparse(c.row(i));
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  return la::kernel_sparse(rows, n);
}

Subspace centralizer(const Algebra& big, const Subspace& sub) {
  return centralizer(big, sub.basis());
}

Subspace center(const Algebra& a) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < a.dim(); ++i) gens.push_back(a.basis(i));
  return centralizer(a, gens);
}

Subspace generated_subalgebra(const Algebra& a, const std::vector<Vec>& generators) {
  la::EchelonBuilder b(a.dim());
  std::vector<Vec> basis;
  auto push = [&](const Vec& v) {
    if (b.add_dense(v)) basis.push_back(v);
  };
  push(a.one());
  for (const auto& g : generators) push(g);
  for (std::size_t done = 0; done < basis.size(); ++done) {
    for (std::size_t k = 0; k <= done && basis.size() < a.dim(); ++k) {
      push(a.mul(basis[done], basis[k]));
      push(a.mul(basis[k], basis[done]));
    }
  }
  return Subspace::from_builder(b);
}

}  // namespace wha
