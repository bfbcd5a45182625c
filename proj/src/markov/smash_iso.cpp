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


#include "wha/markov/smash_iso.hpp"

#include <functional>

#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {

using Probe = std::function<std::optional<std::string>(std::size_t)>;

std::optional<std::string> scan(std::size_t n, const Probe& probe) {
  auto f = kernels::find_first_failure(n, probe);
  if (f) return f->witness;
  return std::nullopt;
}

struct Term {
  std::size_t p, q;
  Scalar c;
};

std::vector<std::vector<Term>> coproduct_terms(const WeakHopf& h) {
  const std::size_t d = h.dim();
  std::vector<std::vector<Term>> out(d);
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [pq, c] : h.delta[k]) out[k].push_back({pq / d, pq % d, c});
  return out;
}

std::vector<Vec> columns(const Mat& m) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

// Multiplication map of a smash product into M_2 (or M_1) with its checks.
SmashIso finish_iso(Smash s, const Algebra& target, const std::vector<Vec>& ambient_images,
                    const std::vector<Vec>& inverse_images, const std::string& name) {
  const std::size_t n = s.alg.dim(), dt = target.dim();
  Report r(name);
  r.append(s.report, "smash");
  Mat P = Mat::from_columns(ambient_images, dt);
  bool wd = true;
  for (const auto& row : s.quotient.relations().rows())
    if (!la::is_zero(P.apply(la::to_dense(row, P.cols())))) wd = false;
  r.add("well-defined", name, wd, wd ? "" : "multiplication does not vanish on the balancing relations");
  Mat map = P * s.quotient.section_matrix();
  bool dims = n == dt;
  r.add("dimension", name, dims,
        dims ? "" : "dim smash = " + std::to_string(n) + ", dim target = " + std::to_string(dt));
  bool bij = dims && la::rank(map) == dt;
  r.add("bijective", name, bij, bij ? "" : "rank " + std::to_string(la::rank(map)));
  bool unit = map.apply(s.alg.one()) == target.one();
  r.add("unit", name, unit, unit ? "" : "image of 1 # 1 is not 1");
  r.expect("multiplicative", name, scan(n * n, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t i = t / n, j = t % n;
             Vec lhs = map.apply(la::to_dense(s.alg.product(i, j), n));
             if (lhs == target.mul(map.column(i), map.column(j))) return std::nullopt;
             return "product not preserved on " + s.alg.labels()[i] + ", " + s.alg.labels()[j];
           }));
  Mat inv = Mat::from_columns(inverse_images, n);
  bool left = inv * map == Mat::identity(n);
  bool right = map * inv == Mat::identity(dt);
  r.add("inverse-left", name, left, left ? "" : "inverse o map != id on the smash product");
  r.add("inverse-right", name, right, right ? "" : "map o inverse != id on the target");
  return SmashIso{std::move(s), std::move(map), std::move(inv), std::move(r)};
}

}  // namespace

TowerAction action_B_on_M1(const Tower& t, const DerivedWeakHopf& dw) {
  const Frame& f = dw.ctx.frame;
  const CentralizerLattice& lat = dw.ctx.lattice;
  const WeakHopf& H = dw.B_whopf;
  const WeakHopf& HA = dw.A_whopf;
  const Algebra& M2 = f.M2;
  const Algebra M1 = t.algebra(1);
  const std::size_t dh = H.dim(), dm = M1.dim(), da = HA.dim();
  const auto bb = lat.B.basis();
  const auto ab = lat.A.basis();
  const auto xs = columns(f.lift_M1);
  const auto delta = coproduct_terms(H);
  auto B = [&](std::span<const Scalar> c) { return lat.B.combine(c); };

  // G[k * dm + i] = E_{M_1}(b_k x_i e_2) in M_2.
  auto G = kernels::parallel_map<Vec>(dh * dm, [&](std::size_t t2) {
    return f.EM1.apply(M2.mul({bb[t2 / dm], xs[t2 % dm], f.e2}));
  });
  std::vector<Mat> act(dh, Mat(dm, dm));
  for (std::size_t k = 0; k < dh; ++k)
    for (std::size_t i = 0; i < dm; ++i)
      act[k].set_column(i, f.to_M1.apply(la::scaled(f.lambda_inv, G[k * dm + i])));
  TowerAction ta{ModuleAlgebra{H, M1, std::move(act)}, Subspace(dm), Report("b-action")};
  Report& r = ta.report;
  const ModuleAlgebra& m = ta.module;
  r.append(verify_module_algebra(m));

  auto lifted = [&](std::size_t k, std::size_t i) { return f.lift_M1.apply(m.act[k].column(i)); };

  if (auto e2 = lat.B.coordinates(f.e2)) {
    Mat je = m.action_matrix(*e2);
    r.expect("jones-action-is-expectation", "b-action", scan(dm, [&](std::size_t i) -> std::optional<std::string> {
               if (f.lift_M1.apply(je.column(i)) == f.EM.apply(xs[i])) return std::nullopt;
               return "e_2 . x != E_M(x) for x = " + M1.labels()[i];
             }));
  } else {
    r.add("jones-action-is-expectation", "b-action", false, "e_2 is not in B");
  }

  // b . (m a) = m <a_2, b> a_1.
  const auto ms = columns(f.lift_M);
  const std::size_t dmm = ms.size();
  const auto adelta = coproduct_terms(HA);
  const Mat& gram = dw.ctx.pairing.gram;
  r.expect("standard-action-form", "b-action", scan(dh * dmm * da, [&](std::size_t t2) -> std::optional<std::string> {
             std::size_t k = t2 / (dmm * da), i = (t2 / da) % dmm, j = t2 % da;
             Vec lhs = m.act[k].apply(f.to_M1.apply(M2.mul(ms[i], ab[j])));
             Vec rhs(dm);
             for (const auto& [p, q, c] : adelta[j])
               la::axpy(c * gram(q, k), f.to_M1.apply(M2.mul(ms[i], ab[p])), rhs);
             if (lhs == rhs) return std::nullopt;
             return "b . (m a) != m <a_2, b> a_1 for b" + std::to_string(k) + ", m" + std::to_string(i) + ", a" +
                    std::to_string(j);
           }));

  r.expect("conjugation-form", "b-action", scan(dh * dm, [&](std::size_t t2) -> std::optional<std::string> {
             std::size_t k = t2 / dm, i = t2 % dm;
             Vec rhs(M2.dim());
             for (const auto& [p, q, c] : delta[k])
               la::axpy(c, M2.mul({bb[p], xs[i], B(H.antipode(H.alg.basis(q)))}), rhs);
             if (lifted(k, i) == rhs) return std::nullopt;
             return "b . x != b_1 x S(b_2) for b" + std::to_string(k) + ", x = " + M1.labels()[i];
           }));

  try {
    ta.invariants = invariants(m);
    bool eq = ta.invariants == la::image(t.lift_matrix(0, 1));
    r.add("invariants-are-m", "b-action", eq, eq ? "" : "invariant subalgebra has dim " +
                                                             std::to_string(ta.invariants.dim()));
  } catch (const std::logic_error& e) {
    r.add("invariants-are-m", "b-action", false, e.what());
  }

  r.expect("measuring", "b-action", scan(dh * dm * dm, [&](std::size_t t2) -> std::optional<std::string> {
             std::size_t k = t2 / (dm * dm), i = (t2 / dm) % dm, j = t2 % dm;
             Vec lhs = f.EM1.apply(M2.mul({bb[k], xs[i], xs[j], f.e2}));
             Vec rhs(M2.dim());
             for (const auto& [p, q, c] : delta[k])
               la::axpy(c * f.lambda_inv, M2.mul(G[p * dm + i], G[q * dm + j]), rhs);
             if (lhs == rhs) return std::nullopt;
             return "E_{M_1}(b x y e_2) != lambda^{-1} E_{M_1}(b_1 x e_2) E_{M_1}(b_2 y e_2) for b" +
                    std::to_string(k) + ", x = " + M1.labels()[i] + ", y = " + M1.labels()[j];
           }));

  // The induced coaction of the dual of B, read in A through the pairing.
  ComoduleAlgebra co = action_comodule_bridge(m);
  r.append(verify_comodule_algebra(co), "coaction");
  auto gi = la::inverse(gram.transpose());
  if (!gi) {
    r.add("coaction-on-a-is-coproduct", "b-coaction", false, "singular gram matrix");
    return ta;
  }
  r.expect("coaction-on-a-is-coproduct", "b-coaction", scan(da, [&](std::size_t j) -> std::optional<std::string> {
             Vec x = f.to_M1.apply(ab[j]);
             Vec rho(dm * dh);
             for (std::size_t i = 0; i < dm; ++i)
               if (!x[i].is_zero()) la::axpy(x[i], co.rho[i], rho);
             Vec got(dm * da);
             for (std::size_t a = 0; a < dm; ++a) {
               Vec leg(rho.begin() + static_cast<std::ptrdiff_t>(a * dh),
                       rho.begin() + static_cast<std::ptrdiff_t>((a + 1) * dh));
               Vec ac = gi->apply(leg);
               for (std::size_t q = 0; q < da; ++q) got[a * da + q] = ac[q];
             }
             Vec want(dm * da);
             for (const auto& [p, q, c] : adelta[j]) {
               Vec a1 = f.to_M1.apply(ab[p]);
               for (std::size_t a = 0; a < dm; ++a) want[a * da + q] += c * a1[a];
             }
             if (got == want) return std::nullopt;
             return "rho(a) != a_1 (x) a_2 for a" + std::to_string(j);
           }));
  return ta;
}

TowerAction action_A_on_M(const Tower& t, const DerivedWeakHopf& dw) {
  const Frame& f = dw.ctx.frame;
  const CentralizerLattice& lat = dw.ctx.lattice;
  const WeakHopf& H = dw.A_whopf;
  const Algebra& M2 = f.M2;
  const Algebra M = t.algebra(0);
  const std::size_t dh = H.dim(), dm = M.dim();
  const auto ab = lat.A.basis();
  const auto ms = columns(f.lift_M);
  const auto delta = coproduct_terms(H);
  auto A = [&](std::span<const Scalar> c) { return lat.A.combine(c); };
  std::vector<Vec> sa(dh);
  for (std::size_t q = 0; q < dh; ++q) sa[q] = A(H.antipode(H.alg.basis(q)));

  // a_1 m S(a_2) in M_2.
  auto raw = kernels::parallel_map<Vec>(dh * dm, [&](std::size_t t2) {
    std::size_t k = t2 / dm, i = t2 % dm;
    Vec v(M2.dim());
    for (const auto& [p, q, c] : delta[k]) la::axpy(c, M2.mul({ab[p], ms[i], sa[q]}), v);
    return v;
  });
  Report r("a-action");
  r.expect("action-lands-in-m", "a-action", scan(dh * dm, [&](std::size_t t2) -> std::optional<std::string> {
             if (lat.M.contains(raw[t2])) return std::nullopt;
             return "a_1 m S(a_2) not in M for a" + std::to_string(t2 / dm) + ", m = " + M.labels()[t2 % dm];
           }));
  std::vector<Mat> act(dh, Mat(dm, dm));
  for (std::size_t k = 0; k < dh; ++k)
    for (std::size_t i = 0; i < dm; ++i) act[k].set_column(i, f.to_M.apply(raw[k * dm + i]));
  TowerAction ta{ModuleAlgebra{H, M, std::move(act)}, Subspace(dm), std::move(r)};
  const ModuleAlgebra& m = ta.module;
  ta.report.append(verify_module_algebra(m));

  ta.report.expect("target-counit-conjugation", "a-action", scan(dh * dh, [&](std::size_t t2) -> std::optional<std::string> {
                     std::size_t k = t2 / dh, j = t2 % dh;
                     Vec et = A(H.eps_t(H.alg.basis(j)));
                     Vec lhs(M2.dim());
                     for (const auto& [p, q, c] : delta[k]) la::axpy(c, M2.mul({ab[p], et, sa[q]}), lhs);
                     Vec rhs = A(H.eps_t(la::to_dense(H.alg.product(k, j), dh)));
                     if (lhs == rhs) return std::nullopt;
                     return "a_1 eps_t(a') S(a_2) != eps_t(a a') for a" + std::to_string(k) + ", a'" +
                            std::to_string(j);
                   }));

  const auto ns = columns(t.lift_matrix(-1, 0));
  ta.report.expect("base-action-through-target-counit", "a-action",
                   scan(dh * ns.size(), [&](std::size_t t2) -> std::optional<std::string> {
                     std::size_t k = t2 / ns.size(), i = t2 % ns.size();
                     Vec lhs = m.act[k].apply(ns[i]);
                     if (lhs == m.apply(H.eps_t(H.alg.basis(k)), ns[i])) return std::nullopt;
                     return "a . n != eps_t(a) . n for a" + std::to_string(k) + ", n" + std::to_string(i);
                   }));

  try {
    ta.invariants = invariants(m);
    bool eq = ta.invariants == la::image(t.lift_matrix(-1, 0));
    ta.report.add("invariants-are-n", "a-action", eq,
                  eq ? "" : "invariant subalgebra has dim " + std::to_string(ta.invariants.dim()));
  } catch (const std::logic_error& e) {
    ta.report.add("invariants-are-n", "a-action", false, e.what());
  }
  return ta;
}

SmashIso psi_iso(const Tower& t, const DerivedWeakHopf& dw, const TowerAction& b_action) {
  const Frame& f = dw.ctx.frame;
  const CentralizerLattice& lat = dw.ctx.lattice;
  const Depth2Data& d2 = dw.ctx.d2;
  (void)t;
  Smash s = smash(b_action.module);
  const auto xs = columns(f.lift_M1);
  const auto bb = lat.B.basis();
  const std::size_t db = bb.size();
  std::vector<Vec> images(xs.size() * db);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < db; ++k) images[i * db + k] = f.M2.mul(xs[i], bb[k]);
  std::vector<std::optional<Vec>> vc;
  for (const auto& v : d2.vs) vc.push_back(lat.B.coordinates(v));
  std::vector<Vec> inv(f.M2.dim(), Vec(s.alg.dim()));
  for (std::size_t x = 0; x < f.M2.dim(); ++x)
    for (std::size_t j = 0; j < d2.us.size(); ++j) {
      if (!vc[j]) throw std::logic_error("dual basis element outside B");
      Vec left = f.to_M1.apply(f.EM1.apply(f.M2.mul_basis_left(x, d2.us[j])));
      inv[x] = la::add(inv[x], s.element(left, *vc[j]));
    }
  return finish_iso(std::move(s), f.M2, images, inv, "psi");
}

SmashIso phi_iso(const Tower& t, const DerivedWeakHopf& dw, const TowerAction& a_action) {
  const Frame& f = dw.ctx.frame;
  const CentralizerLattice& lat = dw.ctx.lattice;
  const Depth2Data& d2 = dw.ctx.d2;
  const Algebra M1 = t.algebra(1);
  Smash s = smash(a_action.module);
  const auto ms = columns(f.lift_M);
  const auto ab = lat.A.basis();
  const std::size_t da = ab.size();
  std::vector<Vec> images(ms.size() * da);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t k = 0; k < da; ++k) images[i * da + k] = f.to_M1.apply(f.M2.mul(ms[i], ab[k]));
  std::vector<std::optional<Vec>> wc;
  for (const auto& w : d2.ws) wc.push_back(lat.A.coordinates(w));
  const auto xs = columns(f.lift_M1);
  std::vector<Vec> inv(M1.dim(), Vec(s.alg.dim()));
  for (std::size_t x = 0; x < M1.dim(); ++x)
    for (std::size_t j = 0; j < d2.zs.size(); ++j) {
      if (!wc[j]) throw std::logic_error("dual basis element outside A");
      Vec left = f.to_M.apply(f.EM.apply(f.M2.mul(xs[x], d2.zs[j])));
      inv[x] = la::add(inv[x], s.element(left, *wc[j]));
    }
  return finish_iso(std::move(s), M1, images, inv, "phi");
}

Report duality_tower(const DerivedWeakHopf& dw, const SmashIso& phi, const SmashIso& psi) {
  const Frame& f = dw.ctx.frame;
  const CentralizerLattice& lat = dw.ctx.lattice;
  const auto ms = columns(f.lift_M);
  const auto ab = lat.A.basis();
  const auto bb = lat.B.basis();
  const std::size_t dm = ms.size(), da = ab.size(), db = bb.size();
  Report r("duality-tower");
  auto prods = kernels::parallel_map<Vec>(dm * da * db, [&](std::size_t t) {
    return f.M2.mul({ms[t / (da * db)], ab[(t / db) % da], bb[t % db]});
  });
  bool span = Subspace::span(prods, f.M2.dim()).dim() == f.M2.dim();
  r.add("m-a-b-spans-m2", "duality-tower", span, span ? "" : "products m a b do not span M_2");
  r.expect("psi-after-phi", "duality-tower", scan(dm * da * db, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t i = t / (da * db), j = (t / db) % da, k = t % db;
             Vec x = phi.map.apply(phi.smash.element(la::unit_vector(dm, i), la::unit_vector(da, j)));
             Vec y = psi.map.apply(psi.smash.element(x, la::unit_vector(db, k)));
             if (y == prods[t]) return std::nullopt;
             return "psi(phi(m # a) # b) != m a b for m" + std::to_string(i) + ", a" + std::to_string(j) + ", b" +
                    std::to_string(k);
           }));
  return r;
}

}  // namespace wha
