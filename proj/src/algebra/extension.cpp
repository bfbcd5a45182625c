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

#include "wha/algebra/extension.hpp"

#include <algorithm>
#include <sstream>

#include "wha/exactla/echelon.hpp"
#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

SparseVec sorted_sparse(std::vector<std::pair<std::uint32_t, Scalar>> entries) {
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

Inclusion Inclusion::make(Algebra small, Algebra big, Mat embed) {
  Inclusion inc{std::move(small), std::move(big), std::move(embed)};
  if (auto v = inc.violation()) throw InvalidExtension("inclusion: " + *v);
  return inc;
}

std::optional<std::string> Inclusion::violation() const {
  if (embed.rows() != big.dim() || embed.cols() != small.dim()) return "embedding has wrong shape";
  if (push(small.one()) != big.one()) return "embedding does not preserve the unit";
  const std::size_t n = small.dim();
  auto f = kernels::find_first_failure(n * n, [&](std::size_t t) -> std::optional<std::string> {
    std::size_t i = t / n, j = t % n;
    Vec lhs = push(small.mul(small.basis(i), small.basis(j)));
    Vec rhs = big.mul(push(small.basis(i)), push(small.basis(j)));
    if (lhs == rhs) return std::nullopt;
    return "embedding is not multiplicative on basis pair (" + idx(i) + ", " + idx(j) + ")";
  });
  if (f) return f->witness;
  if (la::rank(embed) != n) return "embedding is not injective";
  return std::nullopt;
}

std::vector<Vec> Inclusion::image_basis() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < small.dim(); ++i) out.push_back(embed.column(i));
  return out;
}

CondExpectation CondExpectation::make(Inclusion incl, Mat map) {
  CondExpectation e{std::move(incl), std::move(map)};
  if (auto v = e.violation()) throw InvalidExtension("conditional expectation: " + *v);
  return e;
}

std::optional<std::string> CondExpectation::violation() const {
  const Algebra& s = small();
  const Algebra& b = big();
  if (map.rows() != s.dim() || map.cols() != b.dim()) return "map has wrong shape";
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (apply(incl.push(s.basis(i))) != s.basis(i))
      return "E does not restrict to the identity on small basis element " + idx(i);
  const std::size_t ns = s.dim(), nb = b.dim();
  auto images = incl.image_basis();
  auto f = kernels::find_first_failure(ns * nb, [&](std::size_t t) -> std::optional<std::string> {
    std::size_t a = t / nb, x = t % nb;
    Vec ex = apply(b.basis(x));
    if (apply(b.mul_basis_right(images[a], x)) != s.mul(s.basis(a), ex))
      return "E(n x) != n E(x) for n = " + idx(a) + ", x = " + idx(x);
    if (apply(b.mul_basis_left(x, images[a])) != s.mul(ex, s.basis(a)))
      return "E(x n) != E(x) n for n = " + idx(a) + ", x = " + idx(x);
    return std::nullopt;
  });
  if (f) return f->witness;
  return std::nullopt;
}

CondExpectation scalar_extension(const Algebra& a, std::span<const Scalar> t) {
  Algebra k = ground_field(a.modulus());
  Mat embed(a.dim(), 1);
  embed.set_column(0, a.one());
  Mat map(1, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) map(0, i) = t[i];
  return CondExpectation::make(Inclusion::make(std::move(k), a, std::move(embed)), std::move(map));
}

std::optional<std::string> dual_bases_violation(const CondExpectation& e, const DualBases& db) {
  const Algebra& b = e.big();
  if (db.xs.size() != db.ys.size()) return "dual bases have different lengths";
  auto f = kernels::find_first_failure(b.dim(), [&](std::size_t m) -> std::optional<std::string> {
    Vec left(b.dim()), right(b.dim());
    for (std::size_t i = 0; i < db.xs.size(); ++i) {
      Vec z = e.project(b.mul_basis_left(m, db.xs[i]));
      left = la::add(left, b.mul(z, db.ys[i]));
      Vec z2 = e.project(b.mul_basis_right(db.ys[i], m));
      right = la::add(right, b.mul(db.xs[i], z2));
    }
    Vec em = b.basis(m);
    if (left != em) return "E(m x_i) y_i != m for basis element " + idx(m);
    if (right != em) return "x_i E(y_i m) != m for basis element " + idx(m);
    return std::nullopt;
  });
  if (f) return f->witness;
  return std::nullopt;
}

Outcome<DualBases> find_dual_bases(const CondExpectation& e, const std::optional<Subspace>& within) {
  const Algebra& big = e.big();
  const Algebra& small = e.small();
  const std::size_t n = big.dim(), s = small.dim();
  Subspace w = within ? *within : Subspace::full(n);
  if (w.ambient() != n) throw la::DimensionMismatch("find_dual_bases: subspace ambient");
  auto wb = w.basis();
  const std::size_t r = wb.size();
  if (r == 0) return Outcome<DualBases>::fail("the constraining subspace is zero");
  const std::size_t nvars = r * r;

  auto images = e.incl.image_basis();
  // P[a][k] = n_a w_k and Q[i][a] = w_i n_a for n_a in the small basis.
  std::vector<std::vector<Vec>> P(s, std::vector<Vec>(r)), Q(r, std::vector<Vec>(s));
  kernels::parallel_for(s, [&](std::size_t a) {
    for (std::size_t k = 0; k < r; ++k) P[a][k] = big.mul(images[a], wb[k]);
  });
  kernels::parallel_for(r, [&](std::size_t i) {
    for (std::size_t a = 0; a < s; ++a) Q[i][a] = big.mul(wb[i], images[a]);
  });

  // One block of n rows per basis element m and identity.
  std::vector<std::vector<SparseVec>> blocks(2 * n);
  kernels::parallel_for(2 * n, [&](std::size_t t) {
    const std::size_t m = t % n;
    const bool second = t >= n;
    Mat coef(n, nvars + 1);
    coef(m, nvars) = 1;
    for (std::size_t i = 0; i < r; ++i) {
      if (!second) {
        // sum_{i,k} c_ik E(m w_i) w_k = m
        Vec z = e.apply(big.mul_basis_left(m, wb[i]));
        for (std::size_t a = 0; a < s; ++a) {
          if (z[a].is_zero()) continue;
          for (std::size_t k = 0; k < r; ++k) {
            const Vec& v = P[a][k];
            for (std::size_t p = 0; p < n; ++p)
              if (!v[p].is_zero()) coef(p, i * r + k) += z[a] * v[p];
          }
        }
      } else {
        // sum_{i,k} c_ik w_i E(w_k m) = m; here i indexes the y-basis.
        Vec z = e.apply(big.mul_basis_right(wb[i], m));
        for (std::size_t a = 0; a < s; ++a) {
          if (z[a].is_zero()) continue;
          for (std::size_t xi = 0; xi < r; ++xi) {
            const Vec& v = Q[xi][a];
            for (std::size_t p = 0; p < n; ++p)
              if (!v[p].is_zero()) coef(p, xi * r + i) += z[a] * v[p];
          }
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      auto row = la::to_sparse(coef.row(p));
      if (!row.empty()) blocks[t].push_back(std::move(row));
    }
  });
  std::vector<SparseVec> rows;
  for (auto& b : blocks)
    for (auto& row : b) rows.push_back(std::move(row));

  auto sol = la::solve_sparse(rows, nvars);
  if (!sol)
    return Outcome<DualBases>::fail(
        "no dual bases exist in the given subspace: the " + std::to_string(rows.size()) + " x " +
        std::to_string(nvars) + " system E(m x_i) y_i = m = x_i E(y_i m) is inconsistent");

  auto build = [&](const Vec& c) {
    DualBases db;
    for (std::size_t i = 0; i < r; ++i) {
      Vec y(n);
      for (std::size_t k = 0; k < r; ++k)
        if (!c[i * r + k].is_zero()) la::axpy(c[i * r + k], wb[k], y);
      if (la::is_zero(y)) continue;
      db.xs.push_back(wb[i]);
      db.ys.push_back(std::move(y));
    }
    Vec sum(n);
    for (std::size_t i = 0; i < db.xs.size(); ++i) sum = la::add(sum, big.mul(db.xs[i], db.ys[i]));
    auto c0 = big.as_scalar(sum);
    if (c0 && !c0->is_zero()) db.lambda_inv = *c0;
    return db;
  };
  DualBases db = build(*sol);

  if (db.lambda_inv) {
    // Prefer a solution that also has y_i x_i = lambda^{-1} 1.
    std::vector<SparseVec> extra = rows;
    for (std::size_t p = 0; p < n; ++p) {
      std::vector<std::pair<std::uint32_t, Scalar>> entries;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
          Scalar v = big.mul(wb[k], wb[i])[p];
          if (!v.is_zero()) entries.emplace_back(static_cast<std::uint32_t>(i * r + k), v);
        }
      Scalar rhs = *db.lambda_inv * big.one()[p];
      if (!rhs.is_zero()) entries.emplace_back(static_cast<std::uint32_t>(nvars), rhs);
      auto row = sorted_sparse(std::move(entries));
      if (!row.empty()) extra.push_back(std::move(row));
    }
    if (auto sym = la::solve_sparse(extra, nvars)) db = build(*sym);
  }

  if (auto v = dual_bases_violation(e, db))
    return Outcome<DualBases>::fail("solver output failed re-verification: " + *v);
  return Outcome<DualBases>::ok(std::move(db));
}

bool is_left_nondegenerate(const CondExpectation& e) {
  const Algebra& b = e.big();
  const std::size_t n = b.dim(), s = e.small().dim();
  // Row block j holds x -> E(x e_j).
  std::vector<SparseVec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    Mat m(s, n);
    for (std::size_t x = 0; x < n; ++x) m.set_column(x, e.apply(la::to_dense(b.product(x, j), n)));
    for (std::size_t i = 0; i < s; ++i) {
      auto r = la::to_sparse(m.row(i));
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  return la::kernel_sparse(rows, n).dim() == 0;
}

SymmetryResult is_symmetric(const CondExpectation& e, const Subspace& u_space) {
  const Algebra& b = e.big();
  auto us = u_space.basis();
  const std::size_t n = b.dim();
  auto f = kernels::find_first_failure(us.size() * n, [&](std::size_t t) -> std::optional<std::string> {
    std::size_t u = t / n, x = t % n;
    Vec l = e.apply(b.mul_basis_right(us[u], x));
    Vec r = e.apply(b.mul_basis_left(x, us[u]));
    if (l == r) return std::nullopt;
    return "E(u x) != E(x u) for u = " + b.element_to_string(us[u]) + ", x = " + b.labels()[x] +
           ": " + la::to_string(l) + " vs " + la::to_string(r);
  });
  if (!f) return {};
  return SymmetryResult{false, f->witness};
}

Vec SeparabilityElement::tensor() const {
  Vec v(coeffs.rows() * coeffs.cols());
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (std::size_t j = 0; j < coeffs.cols(); ++j) v[i * coeffs.cols() + j] = coeffs(i, j);
  return v;
}

std::vector<std::pair<Vec, Vec>> SeparabilityElement::terms() const {
  std::vector<std::pair<Vec, Vec>> out;
  const std::size_t d = coeffs.rows();
  for (std::size_t i = 0; i < d; ++i) {
    Vec right(coeffs.row(i).begin(), coeffs.row(i).end());
    if (la::is_zero(right)) continue;
    out.emplace_back(la::unit_vector(d, i), std::move(right));
  }
  return out;
}

namespace {

// Linear system for separability elements: Casimir rows, optional symmetry,
// and the normalization mu(f) = rhs_scale * 1 in the last column.
std::vector<SparseVec> separability_system(const Algebra& a, bool symmetric, bool homogeneous) {
  const std::size_t d = a.dim(), nv = d * d;
  std::vector<SparseVec> rows;
  for (std::size_t g = 0; g < d; ++g) {
    // (e_g (x) 1) f - f (1 (x) e_g), coordinate (p, q) at p * d + q.
    std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> acc(nv);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const auto u = static_cast<std::uint32_t>(i * d + j);
        for (const auto& [p, v] : a.product(g, i)) acc[p * d + j].emplace_back(u, v);
        for (const auto& [q, v] : a.product(j, g)) acc[i * d + q].emplace_back(u, -v);
      }
    for (auto& entries : acc) {
      auto r = sorted_sparse(std::move(entries));
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  if (symmetric)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        rows.push_back(SparseVec{{static_cast<std::uint32_t>(i * d + j), a.scalar(1)},
                                 {static_cast<std::uint32_t>(j * d + i), a.scalar(-1)}});
  // mu(f) = sum F_ij e_i e_j = 1
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> mu(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, v] : a.product(i, j))
        mu[k].emplace_back(static_cast<std::uint32_t>(i * d + j), v);
  for (std::size_t k = 0; k < d; ++k) {
    if (!homogeneous && !a.one()[k].is_zero())
      mu[k].emplace_back(static_cast<std::uint32_t>(nv), a.one()[k]);
    auto r = sorted_sparse(std::move(mu[k]));
    if (!r.empty()) rows.push_back(std::move(r));
  }
  return rows;
}

Outcome<SeparabilityElement> solve_separability(const Algebra& a, bool symmetric) {
  const std::size_t d = a.dim(), nv = d * d;
  auto sol = la::solve_sparse(separability_system(a, symmetric, false), nv);
  if (!sol)
    return Outcome<SeparabilityElement>::fail(
        symmetric ? "no symmetric separability element: the algebra is not Kanzaki separable"
                  : "no separability element: the algebra is not separable");
  SeparabilityElement f;
  f.coeffs = Mat(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) f.coeffs(i, j) = (*sol)[i * d + j];
  f.symmetric = f.coeffs == f.coeffs.transpose();
  f.unique = la::kernel_sparse(separability_system(a, symmetric, true), nv).dim() == 0;
  return Outcome<SeparabilityElement>::ok(std::move(f));
}

}  // namespace

Outcome<SeparabilityElement> kanzaki_element(const Algebra& a) {
  return solve_separability(a, true);
}

Outcome<SeparabilityElement> separability_element(const Algebra& a) {
  return solve_separability(a, false);
}

Outcome<DualBases> functional_dual_bases(const Algebra& a, std::span<const Scalar> t) {
  const std::size_t d = a.dim();
  Mat g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, v] : a.product(i, j)) g(i, j) += v * t[k];
  auto inv = la::inverse(g);
  if (!inv) return Outcome<DualBases>::fail("the bilinear form t(xy) is degenerate");
  DualBases db;
  for (std::size_t i = 0; i < d; ++i) {
    db.xs.push_back(a.basis(i));
    db.ys.push_back(Vec(inv->row(i).begin(), inv->row(i).end()));
  }
  return Outcome<DualBases>::ok(std::move(db));
}

RelativeTensor::RelativeTensor(const Inclusion& incl, const std::vector<Vec>& generators)
    : n_(incl.big.dim()) {
  const Algebra& m = incl.big;
  std::vector<Vec> gens = generators.empty() ? incl.image_basis() : generators;
  const std::size_t n = n_;
  std::vector<std::vector<SparseVec>> blocks(gens.size());
  kernels::parallel_for(gens.size(), [&](std::size_t g) {
    const Vec& s = gens[g];
    std::vector<SparseVec> right(n), left(n);
    for (std::size_t i = 0; i < n; ++i) {
      right[i] = la::to_sparse(m.mul_basis_left(i, s));   // e_i s
      left[i] = la::to_sparse(m.mul_basis_right(s, i));   // s e_i
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<std::uint32_t, Scalar>> entries;
        for (const auto& [k, v] : right[i]) entries.emplace_back(static_cast<std::uint32_t>(k * n + j), v);
        for (const auto& [k, v] : left[j]) entries.emplace_back(static_cast<std::uint32_t>(i * n + k), -v);
        auto r = sorted_sparse(std::move(entries));
        if (!r.empty()) blocks[g].push_back(std::move(r));
      }
  });
  la::EchelonBuilder b(n * n);
  for (const auto& blk : blocks)
    for (const auto& r : blk) b.add(r);
  q_ = la::Quotient(n * n, Subspace::from_builder(b));
}

Vec RelativeTensor::pure(std::span<const Scalar> x, std::span<const Scalar> y) const {
  SparseVec v;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (!y[j].is_zero()) v.emplace_back(static_cast<std::uint32_t>(i * n_ + j), x[i] * y[j]);
  }
  return q_.project_sparse(v);
}

Vec RelativeTensor::sum(const std::vector<Vec>& xs, const std::vector<Vec>& ys) const {
  Vec acc(dim());
  for (std::size_t i = 0; i < xs.size(); ++i) acc = la::add(acc, pure(xs[i], ys[i]));
  return acc;
}

MarkovCertificate certify_markov(const CondExpectation& e, const DualBases& duals,
                                 std::span<const Scalar> trace) {
  MarkovCertificate c;
  c.expectation = e;
  c.duals = duals;
  c.trace = Vec(trace.begin(), trace.end());
  Report& r = c.report;
  const Algebra& big = e.big();
  const Algebra& small = e.small();

  r.expect("expectation-bimodule", "frobenius-homomorphism", e.violation());
  auto dbv = dual_bases_violation(e, duals);
  r.expect("dual-basis-identity", "dual-bases", dbv);
  bool nondeg = is_left_nondegenerate(e);
  r.add("frobenius-nondegenerate", "frobenius-homomorphism", nondeg,
        nondeg ? "" : "E(x M) = 0 for some nonzero x");
  c.frobenius = !e.violation() && !dbv && nondeg;

  bool unital = e.apply(big.one()) == small.one();
  r.add("expectation-unital", "strongly-separable", unital, unital ? "" : "E(1) != 1");
  Vec xy(big.dim()), yx(big.dim());
  for (std::size_t i = 0; i < duals.size(); ++i) {
    xy = la::add(xy, big.mul(duals.xs[i], duals.ys[i]));
    yx = la::add(yx, big.mul(duals.ys[i], duals.xs[i]));
  }
  auto li = big.as_scalar(xy);
  bool strong = li && !li->is_zero();
  r.add("index-scalar", "strongly-separable", strong,
        strong ? "" : "x_i y_i = " + big.element_to_string(xy) + " is not a nonzero scalar");
  c.strongly_separable = unital && strong && c.frobenius;
  if (strong) c.lambda_inv = *li;

  bool symprod = strong && big.as_scalar(yx) == li;
  r.add("symmetric-product", "symmetric-product", symprod,
        symprod ? "" : "y_i x_i = " + big.element_to_string(yx));
  c.symmetric_product = symprod;

  if (trace.size() != small.dim()) throw la::DimensionMismatch("certify_markov: trace length");
  bool t1 = la::dot(trace, small.one()) == 1;
  r.add("trace-normalized", "markov-trace", t1, t1 ? "" : "T(1) != 1");
  Vec t0 = e.map.transpose().apply(trace);
  const std::size_t n = big.dim();
  auto tf = kernels::find_first_failure(n * n, [&](std::size_t t) -> std::optional<std::string> {
    std::size_t i = t / n, j = t % n;
    Scalar ab, ba;
    for (const auto& [k, v] : big.product(i, j)) ab += v * t0[k];
    for (const auto& [k, v] : big.product(j, i)) ba += v * t0[k];
    if (ab == ba) return std::nullopt;
    return "T_0(e_i e_j) != T_0(e_j e_i) for (" + idx(i) + ", " + idx(j) + ")";
  });
  r.expect("markov-trace", "markov-trace", tf ? std::optional<std::string>(tf->witness) : std::nullopt);
  c.markov = c.strongly_separable && t1 && !tf;

  c.centralizer = centralizer(big, e.incl.image_basis());
  auto sym = is_symmetric(e, c.centralizer);
  r.add("symmetric-expectation", "symmetric-extension", sym.symmetric, sym.witness);
  c.symmetric = sym.symmetric;

  Algebra u = big.induced(c.centralizer);
  auto kz = kanzaki_element(u);
  r.add("centralizer-kanzaki", "weak-irreducibility", kz.value.has_value(), kz.failure);
  if (kz) c.kanzaki_u = *kz;
  Vec tu(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) tu[i] = la::dot(t0, c.centralizer.basis_vector(i));
  auto tdb = functional_dual_bases(u, tu);
  r.add("centralizer-trace-nondegenerate", "weak-irreducibility", tdb.value.has_value(),
        tdb.failure);
  if (tdb) {
    DualBases lifted;
    for (std::size_t i = 0; i < tdb->size(); ++i) {
      lifted.xs.push_back(c.centralizer.combine(tdb->xs[i]));
      lifted.ys.push_back(c.centralizer.combine(tdb->ys[i]));
    }
    c.trace_duals_u = std::move(lifted);
  }
  c.weakly_irreducible = kz.value.has_value() && tdb.value.has_value();
  return c;
}

bool casimir_shift_check(const MarkovCertificate& cert, const RelativeTensor& tensor) {
  const Algebra& m = cert.expectation.big();
  const auto& db = cert.duals;
  for (const auto& u : cert.centralizer.basis()) {
    std::vector<Vec> xu, uy;
    for (std::size_t i = 0; i < db.size(); ++i) {
      xu.push_back(m.mul(db.xs[i], u));
      uy.push_back(m.mul(u, db.ys[i]));
    }
    if (tensor.sum(xu, db.ys) != tensor.sum(db.xs, uy)) return false;
  }
  return true;
}

bool casimir_shift_check(const MarkovCertificate& cert) {
  return casimir_shift_check(cert, RelativeTensor(cert.expectation.incl));
}

}  // namespace wha
