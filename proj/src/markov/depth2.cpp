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


#include "wha/markov/depth2.hpp"

#include <functional>

#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {

std::optional<std::string> scan(std::size_t n,
                                const std::function<std::optional<std::string>(std::size_t)>& probe) {
  auto f = kernels::find_first_failure(n, probe);
  if (f) return f->witness;
  return std::nullopt;
}

std::vector<Vec> columns(const Mat& m) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

// Span of {x y : x in xs, y in ys}.
Subspace product_span(const Algebra& a, const std::vector<Vec>& xs, const std::vector<Vec>& ys) {
  la::EchelonBuilder b(a.dim());
  for (const auto& x : xs)
    for (const auto& y : ys) b.add_dense(a.mul(x, y));
  return Subspace::from_builder(b);
}

// Span of {x m y}.
Subspace sandwich_span(const Algebra& a, const std::vector<Vec>& xs, const Vec& m,
                       const std::vector<Vec>& ys) {
  la::EchelonBuilder b(a.dim());
  for (const auto& x : xs) {
    Vec xm = a.mul(x, m);
    for (const auto& y : ys) b.add_dense(a.mul(xm, y));
  }
  return Subspace::from_builder(b);
}

std::string dims(const Subspace& a, const Subspace& b) {
  return "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim());
}

void expect_equal(Report& r, const std::string& name, const std::string& anchor, const Subspace& a,
                  const Subspace& b) {
  bool ok = a.contains(b) && b.contains(a);
  r.add(name, anchor, ok, ok ? "" : "subspaces differ (" + dims(a, b) + ")");
}

void expect_contains(Report& r, const std::string& name, const std::string& anchor, const Subspace& big,
                     const Subspace& small) {
  bool ok = big.contains(small);
  r.add(name, anchor, ok, ok ? "" : "not contained (" + dims(small, big) + ")");
}

}  // namespace

Scalar Frame::T(std::span<const Scalar> x, std::span<const Scalar> y) const {
  return la::dot(x, trace_form.apply(y));
}

Frame make_frame(const Tower& t) {
  if (t.depth() < 2) throw std::invalid_argument("make_frame: the tower must reach M_2");
  Frame f;
  f.M2 = t.levels[2].alg;
  f.lift_N = t.lift_matrix(-1, 2);
  f.lift_M = t.lift_matrix(0, 2);
  f.lift_M1 = t.lift_matrix(1, 2);
  f.to_M1 = t.expect_matrix(2, 1);
  f.to_M = t.expect_matrix(2, 0);
  f.EM1 = f.lift_M1 * f.to_M1;
  f.EM = f.lift_M * f.to_M;
  f.EN = f.lift_N * t.expect_matrix(2, -1);
  f.trace = t.levels[2].trace;
  const std::size_t n = f.M2.dim();
  f.trace_form = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s(0);
      for (const auto& [k, v] : f.M2.product(i, j)) s += v * f.trace[k];
      f.trace_form(i, j) = s;
    }
  f.e1 = t.jones(1, 2);
  f.e2 = t.levels[2].jones;
  f.lambda = t.lambda();
  f.lambda_inv = t.lambda_inv();
  return f;
}

CentralizerLattice centralizers(const Tower& t, const Frame& f) {
  CentralizerLattice lat;
  Report& r = lat.report;
  r = Report("centralizer-lattice");
  const Algebra& m2 = f.M2;
  auto nb = columns(f.lift_N), mb = columns(f.lift_M), m1b = columns(f.lift_M1);
  lat.N = la::image(f.lift_N);
  lat.M = la::image(f.lift_M);
  lat.M1 = la::image(f.lift_M1);
  lat.C = centralizer(m2, nb);
  lat.B = centralizer(m2, mb);
  lat.W = centralizer(m2, m1b);
  lat.A = lat.M1.intersect(lat.C);
  lat.U = lat.M.intersect(lat.C);
  lat.V = lat.M1.intersect(lat.B);

  std::vector<Vec> u_lift;
  for (const auto& u : t.base.centralizer.basis()) u_lift.push_back(f.lift_M.apply(u));
  expect_equal(r, "centralizer-u-matches-base", "centralizer-lattice", lat.U,
               Subspace::span(u_lift, m2.dim()));
  expect_contains(r, "u-in-a", "centralizer-lattice", lat.A, lat.U);
  expect_contains(r, "v-in-a", "centralizer-lattice", lat.A, lat.V);
  expect_contains(r, "v-in-b", "centralizer-lattice", lat.B, lat.V);
  expect_contains(r, "w-in-b", "centralizer-lattice", lat.B, lat.W);
  expect_contains(r, "a-in-c", "centralizer-lattice", lat.C, lat.A);
  expect_contains(r, "b-in-c", "centralizer-lattice", lat.C, lat.B);
  expect_equal(r, "v-is-a-meet-b", "centralizer-lattice", lat.V, lat.A.intersect(lat.B));

  std::vector<Vec> phi;
  for (const auto& u : t.base.centralizer.basis()) phi.push_back(f.lift_M1.apply(centralizer_map(t, u)));
  expect_equal(r, "phi-image-is-v", "centralizer-anti-isomorphism", lat.V, Subspace::span(phi, m2.dim()));
  return lat;
}

Outcome<Depth2Data> depth2_check(const Tower& t, const Frame& f, const CentralizerLattice& lat) {
  const Algebra& m1 = t.levels[1].alg;
  Subspace a1 = centralizer(m1, columns(t.lift_matrix(-1, 1)));
  auto left = find_dual_bases(t.levels[1].down, a1);
  if (!left) return Outcome<Depth2Data>::fail("E_M has no dual bases in A = C_{M1}(N): " + left.failure);
  auto right = find_dual_bases(t.levels[2].down, lat.B);
  if (!right) return Outcome<Depth2Data>::fail("E_{M1} has no dual bases in B = C_{M2}(M): " + right.failure);
  Depth2Data d;
  for (const auto& z : left->xs) d.zs.push_back(f.lift_M1.apply(z));
  for (const auto& w : left->ys) d.ws.push_back(f.lift_M1.apply(w));
  d.us = right->xs;
  d.vs = right->ys;
  return Outcome<Depth2Data>::ok(std::move(d));
}

Expectations conditional_expectations(const Tower& t, const Frame& f, const CentralizerLattice& lat,
                                      const Depth2Data& d2) {
  Expectations ex;
  Report& r = ex.report;
  r = Report("conditional-expectations");
  const Algebra& m2 = f.M2;
  const std::size_t n = m2.dim();
  if (!t.base.trace_duals_u) throw TowerFailure("the trace on C_M(N) has no dual bases");
  for (const auto& a : t.base.trace_duals_u->xs) ex.cs.push_back(f.lift_M1.apply(centralizer_map(t, a)));
  for (const auto& b : t.base.trace_duals_u->ys) ex.ds.push_back(f.lift_M1.apply(centralizer_map(t, b)));

  ex.EA = f.EM1;
  ex.EB = Mat(n, n);
  ex.EB_alt = Mat(n, n);
  Mat ft = f.trace_form.transpose();
  for (std::size_t i = 0; i < ex.cs.size(); ++i)
    for (std::size_t j = 0; j < d2.us.size(); ++j) {
      Vec p = m2.mul(d2.us[j], ex.cs[i]);
      Vec q = m2.mul(ex.ds[i], d2.vs[j]);
      Vec tp = f.trace_form.apply(p);  // k -> T(e_k p)
      Vec tq = ft.apply(q);            // k -> T(q e_k)
      for (std::size_t a = 0; a < n; ++a) {
        if (!q[a].is_zero())
          for (std::size_t k = 0; k < n; ++k)
            if (!tp[k].is_zero()) ex.EB(a, k) += q[a] * tp[k];
        if (!p[a].is_zero())
          for (std::size_t k = 0; k < n; ++k)
            if (!tq[k].is_zero()) ex.EB_alt(a, k) += p[a] * tq[k];
      }
    }

  auto cb = lat.C.basis(), bb = lat.B.basis(), ab = lat.A.basis();
  auto EB = [&](std::span<const Scalar> c) { return ex.EB.apply(c); };
  auto EA = [&](std::span<const Scalar> c) { return ex.EA.apply(c); };
  const Scalar& li = f.lambda_inv;
  auto str = [&](std::span<const Scalar> x) { return m2.element_to_string(x); };

  r.expect("expectation-b-into-b", "expectation-onto-b", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             if (lat.B.contains(EB(cb[i]))) return std::nullopt;
             return "E_B(c) not in B for c = " + str(cb[i]);
           }));
  r.expect("expectation-b-identity-on-b", "expectation-onto-b", scan(bb.size(), [&](std::size_t i) -> std::optional<std::string> {
             if (EB(bb[i]) == bb[i]) return std::nullopt;
             return "E_B(b) != b for b = " + str(bb[i]);
           }));
  r.expect("expectation-b-bimodule", "expectation-onto-b",
           scan(bb.size() * cb.size(), [&](std::size_t s) -> std::optional<std::string> {
             const Vec& b = bb[s / cb.size()];
             const Vec& c = cb[s % cb.size()];
             Vec ec = EB(c);
             if (EB(m2.mul(b, c)) != m2.mul(b, ec)) return "E_B(b c) != b E_B(c) for b = " + str(b) + ", c = " + str(c);
             if (EB(m2.mul(c, b)) != m2.mul(ec, b)) return "E_B(c b) != E_B(c) b for b = " + str(b) + ", c = " + str(c);
             return std::nullopt;
           }));
  Vec ee = EB(f.e1);
  bool ee_ok = ee == la::scaled(f.lambda, m2.one());
  r.add("expectation-b-of-jones", "expectation-onto-b", ee_ok, ee_ok ? "" : "E_B(e_1) = " + str(ee));
  r.expect("expectation-b-trace", "expectation-onto-b",
           scan(bb.size() * cb.size(), [&](std::size_t s) -> std::optional<std::string> {
             const Vec& b = bb[s / cb.size()];
             const Vec& c = cb[s % cb.size()];
             if (f.T(EB(c), b) == f.T(b, c)) return std::nullopt;
             return "T(E_B(c) b) != T(b c) for b = " + str(b) + ", c = " + str(c);
           }));
  r.expect("expectation-b-alternative-form", "expectation-onto-b", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             if (EB(cb[i]) == ex.EB_alt.apply(cb[i])) return std::nullopt;
             return "the two formulas for E_B differ at c = " + str(cb[i]);
           }));
  r.expect("expectation-a-into-a", "commuting-square", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             if (lat.A.contains(EA(cb[i]))) return std::nullopt;
             return "E_A(c) not in A for c = " + str(cb[i]);
           }));
  r.expect("commuting-square", "commuting-square", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             const Vec& c = cb[i];
             Vec ab_c = EA(EB(c)), ba_c = EB(EA(c));
             Vec direct(n);
             for (std::size_t k = 0; k < ex.cs.size(); ++k)
               direct = la::add(direct, la::scaled(f.T(c, ex.cs[k]), ex.ds[k]));
             if (ab_c != ba_c) return "E_A E_B(c) != E_B E_A(c) for c = " + str(c);
             if (ab_c != direct) return "E_A E_B(c) != T(c c_i) d_i for c = " + str(c);
             return std::nullopt;
           }));

  expect_equal(r, "centralizer-product-ab", "centralizer-factorization", lat.C, product_span(m2, ab, bb));
  expect_equal(r, "centralizer-product-ba", "centralizer-factorization", lat.C, product_span(m2, bb, ab));
  std::size_t avb = balanced_tensor_dim(m2, lat.A, lat.V, lat.B);
  r.add("centralizer-balanced-tensor", "centralizer-factorization", avb == lat.C.dim(),
        avb == lat.C.dim() ? "" : "dim A (x)_V B = " + std::to_string(avb) + ", dim C = " + std::to_string(lat.C.dim()));

  const Vec& e1 = f.e1;
  const Vec& e2 = f.e2;
  r.expect("pimsner-popa-a-left", "centralizer-pimsner-popa", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             const Vec& c = cb[i];
             if (la::scaled(li, m2.mul(e2, EA(m2.mul(e2, c)))) == m2.mul(e2, c)) return std::nullopt;
             return "lambda^{-1} e_2 E_A(e_2 c) != e_2 c for c = " + str(c);
           }));
  r.expect("pimsner-popa-a-right", "centralizer-pimsner-popa", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             const Vec& c = cb[i];
             if (la::scaled(li, m2.mul(EA(m2.mul(c, e2)), e2)) == m2.mul(c, e2)) return std::nullopt;
             return "lambda^{-1} E_A(c e_2) e_2 != c e_2 for c = " + str(c);
           }));
  r.expect("pimsner-popa-b-left", "centralizer-pimsner-popa", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             const Vec& c = cb[i];
             if (la::scaled(li, m2.mul(e1, EB(m2.mul(e1, c)))) == m2.mul(e1, c)) return std::nullopt;
             return "lambda^{-1} e_1 E_B(e_1 c) != e_1 c for c = " + str(c);
           }));
  r.expect("pimsner-popa-b-right", "centralizer-pimsner-popa", scan(cb.size(), [&](std::size_t i) -> std::optional<std::string> {
             const Vec& c = cb[i];
             if (la::scaled(li, m2.mul(EB(m2.mul(c, e1)), e1)) == m2.mul(c, e1)) return std::nullopt;
             return "lambda^{-1} E_B(c e_1) e_1 != c e_1 for c = " + str(c);
           }));

  std::vector<Vec> v_e1{e1}, v_e2{e2};
  expect_equal(r, "c-e2-is-a-e2", "centralizer-pimsner-popa", product_span(m2, cb, v_e2), product_span(m2, ab, v_e2));
  expect_equal(r, "e2-c-is-e2-a", "centralizer-pimsner-popa", product_span(m2, v_e2, cb), product_span(m2, v_e2, ab));
  expect_equal(r, "c-e1-is-b-e1", "centralizer-pimsner-popa", product_span(m2, cb, v_e1), product_span(m2, bb, v_e1));
  expect_equal(r, "e1-c-is-e1-b", "centralizer-pimsner-popa", product_span(m2, v_e1, cb), product_span(m2, v_e1, bb));
  expect_equal(r, "c-is-a-e2-a", "centralizer-pimsner-popa", lat.C, sandwich_span(m2, ab, e2, ab));
  expect_equal(r, "c-is-b-e1-b", "centralizer-pimsner-popa", lat.C, sandwich_span(m2, bb, e1, bb));

  // M_2 = M_1 B with M_1 (x)_V B -> M_2 inverted by x -> E_{M1}(x u_j) (x) v_j.
  auto m1b = lat.M1.basis(), mb = lat.M.basis();
  expect_equal(r, "m2-is-m1-b", "tensor-decomposition", Subspace::full(n), product_span(m2, m1b, bb));
  std::size_t d1 = balanced_tensor_dim(m2, lat.M1, lat.V, lat.B);
  r.add("m2-balanced-tensor", "tensor-decomposition", d1 == n,
        d1 == n ? "" : "dim M1 (x)_V B = " + std::to_string(d1) + ", dim M2 = " + std::to_string(n));
  r.expect("m2-decomposition-inverse", "tensor-decomposition", scan(n, [&](std::size_t x) -> std::optional<std::string> {
             Vec acc(n);
             for (std::size_t j = 0; j < d2.us.size(); ++j)
               acc = la::add(acc, m2.mul(f.EM1.apply(m2.mul_basis_left(x, d2.us[j])), d2.vs[j]));
             if (acc == m2.basis(x)) return std::nullopt;
             return "E_{M1}(x u_j) v_j != x for x = " + m2.labels()[x];
           }));
  expect_equal(r, "m1-is-m-a", "tensor-decomposition", lat.M1, product_span(m2, mb, ab));
  std::size_t d0 = balanced_tensor_dim(m2, lat.M, lat.U, lat.A);
  r.add("m1-balanced-tensor", "tensor-decomposition", d0 == lat.M1.dim(),
        d0 == lat.M1.dim() ? "" : "dim M (x)_U A = " + std::to_string(d0) + ", dim M1 = " + std::to_string(lat.M1.dim()));
  r.expect("m1-decomposition-inverse", "tensor-decomposition", scan(m1b.size(), [&](std::size_t i) -> std::optional<std::string> {
             const Vec& x = m1b[i];
             Vec acc(n);
             for (std::size_t j = 0; j < d2.zs.size(); ++j)
               acc = la::add(acc, m2.mul(f.EM.apply(m2.mul(x, d2.zs[j])), d2.ws[j]));
             if (acc == x) return std::nullopt;
             return "E_M(x z_j) w_j != x for x = " + str(x);
           }));
  return ex;
}

std::size_t balanced_tensor_dim(const Algebra& alg, const Subspace& x, const Subspace& z, const Subspace& y) {
  const std::size_t dx = x.dim(), dy = y.dim();
  auto xb = x.basis(), yb = y.basis(), zb = z.basis();
  la::EchelonBuilder rel(dx * dy);
  for (const auto& zz : zb) {
    std::vector<Vec> xz(dx), zy(dy);
    for (std::size_t p = 0; p < dx; ++p) {
      auto c = x.coordinates(alg.mul(xb[p], zz));
      if (!c) throw std::invalid_argument("balanced_tensor_dim: X Z is not contained in X");
      xz[p] = *c;
    }
    for (std::size_t q = 0; q < dy; ++q) {
      auto c = y.coordinates(alg.mul(zz, yb[q]));
      if (!c) throw std::invalid_argument("balanced_tensor_dim: Z Y is not contained in Y");
      zy[q] = *c;
    }
    for (std::size_t p = 0; p < dx; ++p)
      for (std::size_t q = 0; q < dy; ++q) {
        Vec row(dx * dy);
        for (std::size_t a = 0; a < dx; ++a)
          if (!xz[p][a].is_zero()) row[a * dy + q] += xz[p][a];
        for (std::size_t b = 0; b < dy; ++b)
          if (!zy[q][b].is_zero()) row[p * dy + b] -= zy[q][b];
        rel.add_dense(row);
      }
  }
  return dx * dy - rel.rank();
}

Scalar PairingData::pair(const Frame& fr, std::span<const Scalar> a, std::span<const Scalar> b) const {
  Vec left = fr.mul({Vec(a.begin(), a.end()), fr.e2, fr.e1, w});
  return fr.lambda_inv * fr.lambda_inv * fr.T(left, b);
}

PairingData pairing(const Frame& f, const CentralizerLattice& lat) {
  PairingData p;
  Report& r = p.report;
  r = Report("pairing");
  const Algebra& m2 = f.M2;
  const std::size_t n = m2.dim();
  Algebra valg = m2.induced(lat.V);
  auto fe = kanzaki_element(valg);
  r.add("v-kanzaki-separable", "separability-element", fe.value.has_value(), fe.failure);
  if (!fe) throw SingularGram("C_{M1}(M) is not Kanzaki separable: " + fe.failure);
  Vec ft(n);
  for (const auto& [x, y] : fe->terms()) {
    Vec fx = lat.V.combine(x), fy = lat.V.combine(y);
    ft = la::add(ft, la::scaled(f.T(fy), fx));
    p.f.emplace_back(std::move(fx), std::move(fy));
  }
  auto wi = m2.inverse(ft);
  r.add("separability-trace-invertible", "separability-element", wi.has_value(),
        wi ? "" : "f^1 T(f^2) = " + m2.element_to_string(ft) + " is not invertible");
  if (!wi) throw SingularGram("f^1 T(f^2) is not invertible");
  p.w = *wi;
  p.w_inv = ft;
  auto vb = lat.V.basis();
  bool central = lat.V.contains(p.w);
  for (const auto& v : vb) central = central && m2.commute(p.w, v);
  r.add("w-central-in-v", "separability-element", central, central ? "" : "w is not in the center of V");
  r.expect("separability-trace-identity", "separability-element",
           scan(vb.size(), [&](std::size_t i) -> std::optional<std::string> {
             Vec acc(n);
             Vec vw = m2.mul(vb[i], p.w);
             for (const auto& [x, y] : p.f) acc = la::add(acc, la::scaled(f.T(vw, y), x));
             if (acc == vb[i]) return std::nullopt;
             return "f^1 T(v w f^2) != v for v = " + m2.element_to_string(vb[i]);
           }));

  auto ab = lat.A.basis(), bb = lat.B.basis();
  const Scalar l2 = f.lambda_inv * f.lambda_inv;
  p.gram = Mat(ab.size(), bb.size());
  p.gram_alt = Mat(ab.size(), bb.size());
  std::vector<Vec> left(ab.size()), right(bb.size());
  kernels::parallel_for(ab.size(), [&](std::size_t i) { left[i] = f.mul({ab[i], f.e2, f.e1, p.w}); });
  kernels::parallel_for(bb.size(), [&](std::size_t j) { right[j] = f.mul({bb[j], f.e1, f.e2, p.w}); });
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < bb.size(); ++j) {
      p.gram(i, j) = l2 * f.T(left[i], bb[j]);
      p.gram_alt(i, j) = l2 * f.T(right[j], ab[i]);
    }
  bool square = ab.size() == bb.size();
  r.add("dimension-a-equals-b", "pairing-nondegenerate", square,
        square ? "" : "dim A = " + std::to_string(ab.size()) + ", dim B = " + std::to_string(bb.size()));
  std::size_t rk = la::rank(p.gram), rk2 = la::rank(p.gram_alt);
  bool full = square && rk == ab.size();
  bool full2 = square && rk2 == ab.size();
  r.add("pairing-nondegenerate", "pairing-nondegenerate", full, full ? "" : "gram rank " + std::to_string(rk));
  r.add("second-pairing-nondegenerate", "pairing-nondegenerate", full2,
        full2 ? "" : "gram rank " + std::to_string(rk2));
  if (!full || !full2) throw SingularGram("the pairing of A and B is degenerate");
  return p;
}

}  // namespace wha
