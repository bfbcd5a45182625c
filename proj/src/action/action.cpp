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

#include "wha/action/action.hpp"

#include <algorithm>

#include "wha/exactla/echelon.hpp"
#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {

std::optional<std::string> as_failure(const std::optional<kernels::Failure>& f) {
  if (!f) return std::nullopt;
  return f->witness;
}

Mat eps_t_matrix(const WeakHopf& h) {
  Mat m(h.dim(), h.dim());
  for (std::size_t k = 0; k < h.dim(); ++k) m.set_column(k, h.eps_t(h.alg.basis(k)));
  return m;
}

// Product in A (x) B of dense vectors with e_a (x) f_b at index a * dim B + b.
Vec tensor_pair_mul(const Algebra& a, const Algebra& b, std::span<const Scalar> x,
                    std::span<const Scalar> y) {
  const std::size_t da = a.dim(), db = b.dim();
  Vec out(da * db);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j].is_zero()) continue;
      const Scalar c = x[i] * y[j];
      for (const auto& [p, u] : a.product(i / db, j / db))
        for (const auto& [q, v] : b.product(i % db, j % db)) out[p * db + q] += c * u * v;
    }
  }
  return out;
}

Vec coordinates_or_throw(const Subspace& s, std::span<const Scalar> v, const char* what) {
  auto c = s.coordinates(v);
  if (!c) throw std::logic_error(what);
  return *c;
}

}  // namespace

Vec ModuleAlgebra::apply(std::span<const Scalar> h, std::span<const Scalar> a) const {
  return action_matrix(h).apply(a);
}

Mat ModuleAlgebra::action_matrix(std::span<const Scalar> h) const {
  Mat m(A.dim(), A.dim());
  for (std::size_t k = 0; k < h.size(); ++k)
    if (!h[k].is_zero()) {
      const Mat& a = act[k];
      for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
          if (!a(i, j).is_zero()) m(i, j) += h[k] * a(i, j);
    }
  return m;
}

Vec ComoduleAlgebra::coact(std::span<const Scalar> a) const {
  Vec out(A.dim() * H.dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) la::axpy(a[i], rho[i], out);
  return out;
}

Report verify_module_algebra(const ModuleAlgebra& m) {
  Report r("module-algebra");
  const std::size_t dh = m.H.dim(), da = m.A.dim();
  const Algebra& A = m.A;
  const Algebra& H = m.H.alg;
  if (m.act.size() != dh) throw la::DimensionMismatch("module algebra: one matrix per basis element");
  r.expect("module-associative", "module",
           as_failure(kernels::find_first_failure(dh * dh, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t i = t / dh, j = t % dh;
             Mat lhs = m.action_matrix(la::to_dense(H.product(i, j), dh));
             if (lhs == m.act[i] * m.act[j]) return std::nullopt;
             return "(hg).a != h.(g.a) for h = " + H.labels()[i] + ", g = " + H.labels()[j];
           })));
  bool unital = m.action_matrix(H.one()) == Mat::identity(da);
  r.add("module-unital", "module", unital, unital ? "" : "1.a != a");
  r.expect("action-multiplicative", "module-algebra",
           as_failure(kernels::find_first_failure(dh * da * da, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t k = t / (da * da), a = (t / da) % da, b = t % da;
             Vec lhs = m.act[k].apply(la::to_dense(A.product(a, b), da));
             Vec rhs(da);
             for (const auto& [pq, c] : m.H.delta[k])
               la::axpy(c, A.mul(m.act[pq / dh].column(a), m.act[pq % dh].column(b)), rhs);
             if (lhs == rhs) return std::nullopt;
             return "h.(ab) != (h_1.a)(h_2.b) for h = " + H.labels()[k] + ", a = " + A.labels()[a] +
                    ", b = " + A.labels()[b];
           })));
  r.expect("action-unit", "module-algebra",
           as_failure(kernels::find_first_failure(dh, [&](std::size_t k) -> std::optional<std::string> {
             Vec lhs = m.act[k].apply(A.one());
             Vec rhs = m.apply(m.H.eps_t(H.basis(k)), A.one());
             if (lhs == rhs) return std::nullopt;
             return "h.1 != eps_t(h).1 for h = " + H.labels()[k];
           })));
  return r;
}

Report verify_comodule_algebra(const ComoduleAlgebra& c) {
  Report r("comodule-algebra");
  const std::size_t dh = c.H.dim(), da = c.A.dim();
  r.expect("comodule-coassociative", "comodule",
           as_failure(kernels::find_first_failure(da, [&](std::size_t i) -> std::optional<std::string> {
             Vec left(da * dh * dh), right(da * dh * dh);
             for (std::size_t a = 0; a < da; ++a)
               for (std::size_t h = 0; h < dh; ++h) {
                 const Scalar& v = c.rho[i][a * dh + h];
                 if (v.is_zero()) continue;
                 for (std::size_t b = 0; b < da; ++b)
                   for (std::size_t g = 0; g < dh; ++g) {
                     const Scalar& u = c.rho[a][b * dh + g];
                     if (!u.is_zero()) left[(b * dh + g) * dh + h] += v * u;
                   }
                 for (const auto& [pq, u] : c.H.delta[h]) right[a * dh * dh + pq] += v * u;
               }
             if (left == right) return std::nullopt;
             return "(rho (x) id)rho != (id (x) Delta)rho on " + c.A.labels()[i];
           })));
  r.expect("comodule-counit", "comodule",
           as_failure(kernels::find_first_failure(da, [&](std::size_t i) -> std::optional<std::string> {
             Vec v(da);
             for (std::size_t a = 0; a < da; ++a)
               for (std::size_t h = 0; h < dh; ++h) v[a] += c.rho[i][a * dh + h] * c.H.eps[h];
             if (v == c.A.basis(i)) return std::nullopt;
             return "(id (x) eps)rho != id on " + c.A.labels()[i];
           })));
  r.expect("coaction-multiplicative", "comodule-algebra",
           as_failure(kernels::find_first_failure(da * da, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t a = t / da, b = t % da;
             Vec lhs = c.coact(la::to_dense(c.A.product(a, b), da));
             if (lhs == tensor_pair_mul(c.A, c.H.alg, c.rho[a], c.rho[b])) return std::nullopt;
             return "rho(ab) != rho(a)rho(b) for a = " + c.A.labels()[a] + ", b = " + c.A.labels()[b];
           })));
  Vec r1 = c.coact(c.A.one());
  Mat et = eps_t_matrix(c.H);
  Vec proj(da * dh);
  for (std::size_t a = 0; a < da; ++a) {
    Vec leg(r1.begin() + static_cast<std::ptrdiff_t>(a * dh), r1.begin() + static_cast<std::ptrdiff_t>((a + 1) * dh));
    Vec img = et.apply(leg);
    std::copy(img.begin(), img.end(), proj.begin() + static_cast<std::ptrdiff_t>(a * dh));
  }
  bool unit = proj == r1;
  r.add("coaction-unit", "comodule-algebra", unit, unit ? "" : "rho(1) != (id (x) eps_t)rho(1)");
  return r;
}

ModuleAlgebra trivial_action(const WeakHopf& h) {
  const Algebra& H = h.alg;
  Subspace ht = la::image(eps_t_matrix(h));
  Algebra A = H.induced(ht);
  auto zs = ht.basis();
  std::vector<Mat> act(h.dim(), Mat(A.dim(), A.dim()));
  for (std::size_t k = 0; k < h.dim(); ++k)
    for (std::size_t j = 0; j < zs.size(); ++j)
      act[k].set_column(j, coordinates_or_throw(ht, h.eps_t(H.mul_basis_left(k, zs[j])),
                                                "eps_t leaves the target subalgebra"));
  return ModuleAlgebra{h, A, std::move(act)};
}

ModuleAlgebra standard_action(const WeakHopf& h) {
  const std::size_t d = h.dim();
  std::vector<Mat> act(d, Mat(d, d));
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& [ab, c] : h.delta[j]) act[ab % d](ab / d, j) += c;
  return ModuleAlgebra{dual(h), h.alg, std::move(act)};
}

ModuleAlgebra adjoint_action(const WeakHopf& h) {
  const Algebra& H = h.alg;
  const std::size_t d = h.dim();
  Mat es(d, d);
  for (std::size_t k = 0; k < d; ++k) es.set_column(k, h.eps_s(H.basis(k)));
  Subspace c = centralizer(H, la::image(es));
  Algebra A = H.induced(c);
  auto as = c.basis();
  std::vector<Mat> act(d, Mat(A.dim(), A.dim()));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < as.size(); ++j) {
      Vec v(d);
      for (const auto& [ab, coef] : h.delta[k])
        la::axpy(coef, H.mul(H.mul_basis_left(ab / d, as[j]), h.S.column(ab % d)), v);
      act[k].set_column(j, coordinates_or_throw(c, v, "adjoint action leaves the centralizer"));
    }
  return ModuleAlgebra{h, A, std::move(act)};
}

Subspace invariants(const ModuleAlgebra& m) {
  const std::size_t dh = m.H.dim(), da = m.A.dim();
  std::vector<SparseVec> rows;
  for (std::size_t k = 0; k < dh; ++k) {
    Mat diff = m.act[k] - m.action_matrix(m.H.eps_t(m.H.alg.basis(k)));
    for (std::size_t i = 0; i < da; ++i) {
      auto row = la::to_sparse(diff.row(i));
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  Subspace inv = la::kernel_sparse(rows, da);
  if (!inv.contains(m.A.one())) throw std::logic_error("invariants do not contain 1");
  if (!m.A.is_subalgebra(inv)) throw std::logic_error("invariants are not closed under products");
  return inv;
}

ComoduleAlgebra action_comodule_bridge(const ModuleAlgebra& m) {
  const std::size_t dh = m.H.dim(), da = m.A.dim();
  std::vector<Vec> rho(da, Vec(da * dh));
  for (std::size_t k = 0; k < dh; ++k)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t a = 0; a < da; ++a) rho[i][a * dh + k] = m.act[k](a, i);
  return ComoduleAlgebra{dual(m.H), m.A, std::move(rho)};
}

ModuleAlgebra comodule_action_bridge(const ComoduleAlgebra& c, const WeakHopf& h) {
  const std::size_t dh = c.H.dim(), da = c.A.dim();
  std::vector<Mat> act(dh, Mat(da, da));
  for (std::size_t k = 0; k < dh; ++k)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t a = 0; a < da; ++a) act[k](a, i) = c.rho[i][a * dh + k];
  return ModuleAlgebra{h, c.A, std::move(act)};
}

Subspace coinvariants(const ComoduleAlgebra& c) {
  const std::size_t dh = c.H.dim(), da = c.A.dim();
  Mat et = eps_t_matrix(c.H);
  // Rows: for each (a, h) the coefficient of rho(x) - (id (x) eps_t)rho(x).
  Mat sys(da * dh, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t a = 0; a < da; ++a) {
      Vec leg(c.rho[i].begin() + static_cast<std::ptrdiff_t>(a * dh),
              c.rho[i].begin() + static_cast<std::ptrdiff_t>((a + 1) * dh));
      Vec img = et.apply(leg);
      for (std::size_t h = 0; h < dh; ++h) sys(a * dh + h, i) = leg[h] - img[h];
    }
  return la::kernel(sys);
}

Vec Smash::element(std::span<const Scalar> a, std::span<const Scalar> h) const {
  return quotient.project(kron_vec(a, h));
}

Smash smash(const ModuleAlgebra& m) {
  const Algebra& A = m.A;
  const Algebra& H = m.H.alg;
  const std::size_t da = A.dim(), dh = H.dim(), N = da * dh;
  Report report("smash-product");

  Subspace ht = la::image(eps_t_matrix(m.H));
  auto zs = ht.basis();
  la::EchelonBuilder rel(N);
  for (const auto& z : zs) {
    Vec z1 = m.apply(z, A.one());
    for (std::size_t a = 0; a < da; ++a) {
      Vec az = A.mul_basis_left(a, z1);
      for (std::size_t h = 0; h < dh; ++h) {
        Vec zh = H.mul_basis_right(z, h);
        rel.add_dense(la::sub(kron_vec(az, H.basis(h)), kron_vec(A.basis(a), zh)));
      }
    }
  }
  la::Quotient q(N, Subspace::from_builder(rel));

  // a . z = S^{-1}(z) . a must agree with a (z . 1).
  if (auto sinv = la::inverse(m.H.S)) {
    std::optional<std::string> bad;
    for (const auto& z : zs) {
      Vec z1 = m.apply(z, A.one());
      Mat sz = m.action_matrix(sinv->apply(z));
      for (std::size_t a = 0; a < da && !bad; ++a)
        if (A.mul_basis_left(a, z1) != sz.column(a))
          bad = "a(z.1) != S^{-1}(z).a for z = " + H.element_to_string(z) + ", a = " + A.labels()[a];
    }
    report.expect("right-target-action", "smash-balancing", bad);
  } else {
    report.add("right-target-action", "smash-balancing", false, "antipode is not invertible");
  }

  // Z[a][p][b] = e_a (e_p . e_b), W[h][p][g] = sum_q D^h_pq e_q e_g.
  std::vector<Vec> Z(da * dh * da), W(dh * dh * dh);
  kernels::parallel_for(da * dh, [&](std::size_t t) {
    std::size_t a = t / dh, p = t % dh;
    for (std::size_t b = 0; b < da; ++b) Z[t * da + b] = A.mul_basis_left(a, m.act[p].column(b));
  });
  kernels::parallel_for(dh * dh, [&](std::size_t t) {
    std::size_t h = t / dh, p = t % dh;
    for (std::size_t g = 0; g < dh; ++g) W[t * dh + g] = Vec(dh);
    for (const auto& [pq, c] : m.H.delta[h]) {
      if (pq / dh != p) continue;
      for (std::size_t g = 0; g < dh; ++g)
        la::axpy(c, la::to_dense(H.product(pq % dh, g), dh), W[t * dh + g]);
    }
  });
  const std::size_t n = q.dim();
  // P[i * N + j] = class of the product of ambient basis vectors i and j.
  std::vector<Vec> P(N * N);
  kernels::parallel_for(N, [&](std::size_t i) {
    const std::size_t a = i / dh, h = i % dh;
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t b = j / dh, g = j % dh;
      SparseVec acc;
      for (std::size_t p = 0; p < dh; ++p) {
        const Vec& z = Z[(a * dh + p) * da + b];
        const Vec& w = W[(h * dh + p) * dh + g];
        for (std::size_t x = 0; x < da; ++x) {
          if (z[x].is_zero()) continue;
          for (std::size_t y = 0; y < dh; ++y)
            if (!w[y].is_zero()) acc.emplace_back(static_cast<std::uint32_t>(x * dh + y), z[x] * w[y]);
        }
      }
      P[i * N + j] = q.project_sparse(acc);
    }
  });

  const auto& rows = q.relations().rows();
  auto wd = kernels::find_first_failure(rows.size() * N, [&](std::size_t t) -> std::optional<std::string> {
    const auto& row = rows[t / N];
    const std::size_t j = t % N;
    Vec left(n), right(n);
    for (const auto& [i, c] : row) {
      la::axpy(c, P[i * N + j], left);
      la::axpy(c, P[j * N + i], right);
    }
    if (la::is_zero(left) && la::is_zero(right)) return std::nullopt;
    return "product depends on the representative: relation " + std::to_string(t / N) +
           " against " + A.labels()[j / dh] + " # " + H.labels()[j % dh];
  });
  if (wd) throw WellDefinednessFailure(wd->witness);
  report.add("well-defined", "smash-product", true);

  const auto& reps = q.representatives();
  std::vector<SparseVec> products(n * n);
  for (std::size_t r1 = 0; r1 < n; ++r1)
    for (std::size_t r2 = 0; r2 < n; ++r2) products[r1 * n + r2] = la::to_sparse(P[reps[r1] * N + reps[r2]]);
  std::vector<std::string> labels;
  for (auto r : reps) labels.push_back(A.labels()[r / dh] + "#" + H.labels()[r % dh]);
  Vec unit = q.project(kron_vec(A.one(), H.one()));
  Algebra alg = Algebra::from_products(n, std::move(products), unit, std::move(labels), A.modulus());
  auto assoc = alg.associativity_failure();
  report.add("associative", "smash-product", !assoc,
             assoc ? "failure at basis triple (" + std::to_string(std::get<0>(*assoc)) + ", " +
                         std::to_string(std::get<1>(*assoc)) + ", " + std::to_string(std::get<2>(*assoc)) + ")"
                   : "");
  auto uf = alg.unit_failure();
  report.add("unit", "smash-product", !uf, uf ? "1#1 is not a unit on basis element " + std::to_string(*uf) : "");
  return Smash{m, std::move(q), std::move(alg), std::move(report)};
}

ModuleAlgebra smash_dual_action(const Smash& s) {
  const WeakHopf& h = s.M.H;
  const std::size_t dh = h.dim(), da = s.M.A.dim(), n = s.alg.dim();
  const auto& reps = s.quotient.representatives();
  std::vector<Mat> act(dh, Mat(n, n));
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t a = reps[r] / dh, g = reps[r] % dh;
    for (const auto& [xy, c] : h.delta[g]) {
      Vec amb(da * dh);
      amb[a * dh + xy / dh] = c;
      Vec cls = s.quotient.project(amb);
      for (std::size_t i = 0; i < n; ++i) act[xy % dh](i, r) += cls[i];
    }
  }
  return ModuleAlgebra{dual(h), s.alg, std::move(act)};
}

DualityDimensions duality_dimension_check(const ModuleAlgebra& m) {
  DualityDimensions out;
  out.report = Report("smash-duality");
  Smash s = smash(m);
  ModuleAlgebra dual_action = smash_dual_action(s);
  Report dr = verify_module_algebra(dual_action);
  out.report.append(dr, "dual-action/");
  Smash t = smash(dual_action);
  out.double_smash = t.alg.dim();
  out.double_smash_center = center(t.alg).dim();

  const std::size_t n = s.alg.dim(), da = m.A.dim();
  std::vector<SparseVec> rows;
  for (std::size_t a = 0; a < da; ++a) {
    Mat r = s.alg.right_matrix(s.element(m.A.basis(a), m.H.alg.one()));
    // X R - R X = 0 with X(i, j) at index i * n + j.
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t qq = 0; qq < n; ++qq) {
        std::vector<std::pair<std::uint32_t, Scalar>> entries;
        for (std::size_t k = 0; k < n; ++k) {
          if (!r(k, qq).is_zero()) entries.emplace_back(static_cast<std::uint32_t>(p * n + k), r(k, qq));
          if (!r(p, k).is_zero()) entries.emplace_back(static_cast<std::uint32_t>(k * n + qq), -r(p, k));
        }
        std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        SparseVec row;
        for (auto& [i, v] : entries) {
          if (!row.empty() && row.back().first == i) {
            row.back().second += v;
            if (row.back().second.is_zero()) row.pop_back();
          } else {
            row.emplace_back(i, v);
          }
        }
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  Subspace comm = la::kernel_sparse(rows, n * n);
  out.endomorphisms = comm.dim();
  out.endomorphisms_center = center(matrix_algebra(n, m.A.modulus()).induced(comm)).dim();
  bool dims = out.double_smash == out.endomorphisms;
  out.report.add("duality-dimension", "smash-duality", dims,
                 dims ? "" : "dim (A#H)#H* = " + std::to_string(out.double_smash) + " but dim End(A#H)_A = " +
                                 std::to_string(out.endomorphisms));
  bool centers = out.double_smash_center == out.endomorphisms_center;
  out.report.add("duality-center-dimension", "smash-duality", centers,
                 centers ? "" : "center dimensions " + std::to_string(out.double_smash_center) + " and " +
                                    std::to_string(out.endomorphisms_center));
  return out;
}

}  // namespace wha
