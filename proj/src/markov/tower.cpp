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


#include "wha/markov/tower.hpp"

#include <string>

#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {

std::string level_name(std::size_t k) { return k == 0 ? "M" : "M" + std::to_string(k); }

// Sparse accumulation out += c * v.
void accumulate(Vec& out, const Scalar& c, const SparseVec& v) {
  for (const auto& [i, x] : v) out[i] += c * x;
}

// M_{k+1} = M_k (x)_{M_{k-1}} M_k built over `top`; `small_gens` generate
// M_{k-1} inside M_k (empty means its full image).
TowerLevel construct(const TowerLevel& top, const std::vector<Vec>& small_gens,
                     const Scalar& lambda_inv, std::size_t k) {
  const Algebra& m = top.alg;
  const CondExpectation& e = top.down;
  const std::size_t n = m.dim();
  const Scalar lambda = lambda_inv.inverse();

  RelativeTensor rt(e.incl, small_gens);
  const la::Quotient& q = rt.quotient();
  const auto& reps = q.representatives();
  const std::size_t d = reps.size();

  // E(e_j e_i) pushed back into M_k.
  std::vector<Vec> pe(n * n);
  kernels::parallel_for(n * n, [&](std::size_t t) {
    pe[t] = e.project(la::to_dense(m.product(t / n, t % n), n));
  });
  std::vector<SparseVec> products(d * d);
  kernels::parallel_for(d, [&](std::size_t a) {
    const std::size_t ia = reps[a] / n, ja = reps[a] % n;
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t ib = reps[b] / n, jb = reps[b] % n;
      Vec x = m.mul_basis_left(ia, pe[ja * n + ib]);
      Vec acc(d);
      for (std::size_t r = 0; r < n; ++r)
        if (!x[r].is_zero()) accumulate(acc, x[r], q.project_unit(r * n + jb));
      products[a * d + b] = la::to_sparse(acc);
    }
  });

  const auto& xs = top.duals.xs;
  const auto& ys = top.duals.ys;
  Vec unit = rt.sum(xs, ys);
  std::vector<std::string> labels(d);
  for (std::size_t r = 0; r < d; ++r)
    labels[r] = "[" + m.labels()[reps[r] / n] + "|" + m.labels()[reps[r] % n] + "]";
  Algebra alg = Algebra::from_products(d, std::move(products), unit, std::move(labels), m.modulus());

  Mat embed(d, n);
  kernels::parallel_for(n, [&](std::size_t c) {
    std::vector<Vec> left;
    for (const auto& x : xs) left.push_back(m.mul_basis_left(c, x));
    embed.set_column(c, rt.sum(left, ys));
  });
  Mat map(n, d);
  for (std::size_t r = 0; r < d; ++r)
    map.set_column(r, la::scaled(lambda, la::to_dense(m.product(reps[r] / n, reps[r] % n), n)));

  TowerLevel lv{alg, CondExpectation{Inclusion{m, alg, embed}, map}, {}, {}, {}, {}, {}};
  lv.jones = rt.pure(m.one(), m.one());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lv.duals.xs.push_back(la::scaled(lambda_inv, rt.pure(xs[i], m.one())));
    lv.duals.ys.push_back(rt.pure(m.one(), ys[i]));
  }
  lv.duals.lambda_inv = lambda_inv;
  lv.trace = Vec(d);
  for (std::size_t r = 0; r < d; ++r) lv.trace[r] = la::dot(top.trace, map.column(r));
  for (const auto& g : top.generators) lv.generators.push_back(embed.apply(g));
  lv.generators.push_back(lv.jones);

  // Verification of the new level.
  const std::string name = level_name(k + 1);
  Report& r = lv.report;
  r = Report("basic-construction " + name);
  auto assoc = alg.associativity_failure();
  r.add("associative", "relative-tensor-product", !assoc,
        assoc ? "(" + alg.labels()[std::get<0>(*assoc)] + ", " + alg.labels()[std::get<1>(*assoc)] +
                    ", " + alg.labels()[std::get<2>(*assoc)] + ")"
              : "");
  auto unit_bad = alg.unit_failure();
  r.add("unital", "relative-tensor-product", !unit_bad,
        unit_bad ? "x_i (x) y_i fails on " + alg.labels()[*unit_bad] : "");
  r.expect("inclusion", "basic-construction", lv.down.incl.violation());
  r.expect("expectation-bimodule", "basic-construction", lv.down.violation());
  const Vec& ej = lv.jones;
  bool idem = alg.mul(ej, ej) == ej;
  r.add("jones-idempotent", "jones-idempotent", idem, idem ? "" : "e^2 != e");
  r.expect("dual-basis-identity", "dual-bases", dual_bases_violation(lv.down, lv.duals));
  Vec xy(d);
  for (std::size_t i = 0; i < lv.duals.size(); ++i)
    xy = la::add(xy, alg.mul(lv.duals.xs[i], lv.duals.ys[i]));
  bool index_ok = xy == la::scaled(lambda_inv, alg.one());
  r.add("index-scalar", "strongly-separable", index_ok, index_ok ? "" : alg.element_to_string(xy));

  // M_{k+1} = M_k e M_k.
  std::vector<Vec> ce(n);
  for (std::size_t c = 0; c < n; ++c) ce[c] = alg.mul(embed.column(c), ej);
  la::EchelonBuilder span(d);
  for (std::size_t a = 0; a < n && span.rank() < d; ++a)
    for (std::size_t b = 0; b < n && span.rank() < d; ++b) span.add_dense(alg.mul(ce[a], embed.column(b)));
  r.add("spanned-by-jones", "basic-construction", span.rank() == d,
        span.rank() == d ? "" : "span of m e m' has dimension " + std::to_string(span.rank()));

  Vec ee = lv.down.apply(ej);
  bool ee_ok = ee == la::scaled(lambda, m.one());
  r.add("expectation-of-jones", "basic-construction", ee_ok, ee_ok ? "" : "E(e) = " + m.element_to_string(ee));

  auto comp = kernels::find_first_failure(n, [&](std::size_t c) -> std::optional<std::string> {
    Vec x = embed.column(c);
    Vec ex = embed.apply(e.project(m.basis(c)));
    Vec exe = alg.mul({ej, x, ej});
    if (exe != alg.mul(ej, ex)) return "e x e != e E(x) for x = " + m.labels()[c];
    if (exe != alg.mul(ex, ej)) return "e x e != E(x) e for x = " + m.labels()[c];
    return std::nullopt;
  });
  r.expect("jones-compression", "basic-construction", comp ? std::optional(comp->witness) : std::nullopt);

  auto tr = kernels::find_first_failure(d * d, [&](std::size_t t) -> std::optional<std::string> {
    std::size_t a = t / d, b = t % d;
    Scalar lhs(0), rhs(0);
    for (const auto& [c, v] : alg.product(a, b)) lhs += v * lv.trace[c];
    for (const auto& [c, v] : alg.product(b, a)) rhs += v * lv.trace[c];
    if (lhs == rhs) return std::nullopt;
    return "T(xy) != T(yx) for x = " + alg.labels()[a] + ", y = " + alg.labels()[b];
  });
  r.expect("trace-property", "markov-trace", tr ? std::optional(tr->witness) : std::nullopt);
  return lv;
}

std::vector<Vec> basis_of(const Algebra& a) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.basis(i));
  return out;
}

TowerLevel ground_level(const MarkovCertificate& cert) {
  if (!cert.certified())
    throw TowerFailure("the extension is not a certified symmetric Markov extension: " +
                       [&] {
                         auto names = cert.report.failed_names();
                         std::string s;
                         for (const auto& x : names) s += (s.empty() ? "" : ", ") + x;
                         return s.empty() ? std::string("unknown reason") : s;
                       }());
  const CondExpectation& e = cert.expectation;
  TowerLevel lv{e.big(), e, cert.duals, {}, {}, basis_of(e.big()), Report("ground level M")};
  lv.trace = e.map.transpose().apply(cert.trace);
  return lv;
}

std::vector<Vec> small_generators(const Tower& t) {
  const std::size_t top = t.depth();
  if (top == 0) return {};
  std::vector<Vec> out;
  for (const auto& g : t.levels[top - 1].generators) out.push_back(t.levels[top].down.incl.push(g));
  return out;
}

}  // namespace

const Algebra& Tower::algebra(int k) const {
  return k < 0 ? base.expectation.small() : levels.at(static_cast<std::size_t>(k)).alg;
}

Mat Tower::lift_matrix(int from, int to) const {
  if (from > to) throw std::invalid_argument("lift_matrix: from > to");
  Mat out = Mat::identity(algebra(from).dim());
  for (int l = from + 1; l <= to; ++l) out = levels.at(static_cast<std::size_t>(l)).down.incl.embed * out;
  return out;
}

Mat Tower::expect_matrix(int from, int to) const {
  if (to > from) throw std::invalid_argument("expect_matrix: to > from");
  Mat out = Mat::identity(algebra(from).dim());
  for (int l = from; l > to; --l) out = levels.at(static_cast<std::size_t>(l)).down.map * out;
  return out;
}

Vec Tower::jones(std::size_t k, std::size_t at) const {
  if (k == 0 || k > at) throw std::invalid_argument("jones: index out of range");
  return lift_matrix(static_cast<int>(k), static_cast<int>(at)).apply(levels.at(k).jones);
}

Vec Tower::trace(int k) const { return k < 0 ? base.trace : levels.at(static_cast<std::size_t>(k)).trace; }

TowerLevel basic_construction(const MarkovCertificate& cert) {
  TowerLevel g = ground_level(cert);
  return construct(g, {}, cert.lambda_inv, 0);
}

TowerLevel basic_construction(const Tower& t) {
  return construct(t.levels.back(), small_generators(t), t.lambda_inv(), t.depth());
}

Vec centralizer_map(const Tower& t, std::span<const Scalar> u) {
  const Algebra& m = t.levels[0].alg;
  const TowerLevel& l1 = t.levels.at(1);
  const auto& db = t.base.duals;
  Vec out(l1.alg.dim());
  for (std::size_t i = 0; i < db.size(); ++i) {
    Vec xu = l1.down.incl.push(m.mul(db.xs[i], u));
    out = la::add(out, l1.alg.mul({xu, l1.jones, l1.down.incl.push(db.ys[i])}));
  }
  return out;
}

namespace {

void centralizer_checks(const Tower& t, Report& r) {
  const Algebra& m = t.levels[0].alg;
  const TowerLevel& l1 = t.levels[1];
  const Algebra& m1 = l1.alg;
  const Subspace& U = t.base.centralizer;
  Subspace V = centralizer(m1, l1.down.incl.image_basis());
  auto ub = U.basis();
  std::vector<Vec> phi;
  for (const auto& u : ub) phi.push_back(centralizer_map(t, u));

  std::optional<std::string> into;
  for (std::size_t i = 0; i < ub.size() && !into; ++i)
    if (!V.contains(phi[i])) into = "phi(u) not in C_{M1}(M) for u = " + m.element_to_string(ub[i]);
  r.expect("centralizer-map-into", "centralizer-anti-isomorphism", into);

  auto anti = kernels::find_first_failure(ub.size() * ub.size(), [&](std::size_t s) -> std::optional<std::string> {
    std::size_t i = s / ub.size(), j = s % ub.size();
    Vec lhs = centralizer_map(t, m.mul(ub[i], ub[j]));
    if (lhs == m1.mul(phi[j], phi[i])) return std::nullopt;
    return "phi(u u') != phi(u') phi(u) for u = " + m.element_to_string(ub[i]) +
           ", u' = " + m.element_to_string(ub[j]);
  });
  r.expect("centralizer-map-anti-multiplicative", "centralizer-anti-isomorphism",
           anti ? std::optional(anti->witness) : std::nullopt);

  std::size_t rk = Subspace::span(phi, m1.dim()).dim();
  bool bij = rk == U.dim() && rk == V.dim();
  r.add("centralizer-map-bijective", "centralizer-anti-isomorphism", bij,
        bij ? "" : "rank " + std::to_string(rk) + ", dim U " + std::to_string(U.dim()) + ", dim V " +
                       std::to_string(V.dim()));

  const Scalar lambda = t.lambda();
  std::optional<std::string> inv;
  for (std::size_t i = 0; i < ub.size() && !inv; ++i) {
    Vec back = la::scaled(lambda.inverse(), l1.down.apply(m1.mul(phi[i], l1.jones)));
    if (back != ub[i]) inv = "lambda^{-1} E_M(phi(u) e_1) != u for u = " + m.element_to_string(ub[i]);
  }
  r.expect("centralizer-map-inverse", "centralizer-anti-isomorphism", inv);

  std::optional<std::string> sym;
  for (const auto& v : V.basis()) {
    if (l1.down.apply(m1.mul(v, l1.jones)) != l1.down.apply(m1.mul(l1.jones, v))) {
      sym = "E_M(v e_1) != E_M(e_1 v) for v = " + m1.element_to_string(v);
      break;
    }
  }
  r.expect("centralizer-expectation-symmetric", "centralizer-anti-isomorphism", sym);

  std::optional<std::string> tr;
  for (std::size_t i = 0; i < ub.size() && !tr; ++i)
    if (la::dot(l1.trace, phi[i]) != la::dot(t.levels[0].trace, ub[i]))
      tr = "T_1(phi(u)) != T_0(u) for u = " + m.element_to_string(ub[i]);
  r.expect("centralizer-map-trace", "trace-transfer", tr);
}

void relation_checks(const Tower& t, Report& r) {
  const std::size_t top = t.depth();
  const Scalar lambda = t.lambda();
  for (std::size_t k = 0; k <= top; ++k) {
    bool ok = la::dot(t.levels[k].trace, t.levels[k].alg.one()) == Scalar(1);
    r.add("trace-normalized-" + level_name(k), "markov-trace", ok, ok ? "" : "T(1) != 1");
  }
  for (std::size_t i = 1; i < top; ++i) {
    const Algebra& a = t.levels[i + 1].alg;
    Vec ei = t.jones(i, i + 1), ej = t.levels[i + 1].jones;
    std::string si = std::to_string(i), sj = std::to_string(i + 1);
    bool b1 = a.mul({ei, ej, ei}) == la::scaled(lambda, ei);
    r.add("braid-e" + si + "e" + sj + "e" + si, "braid-relations", b1, b1 ? "" : "e_i e_{i+1} e_i != lambda e_i");
    bool b2 = a.mul({ej, ei, ej}) == la::scaled(lambda, ej);
    r.add("braid-e" + sj + "e" + si + "e" + sj, "braid-relations", b2,
          b2 ? "" : "e_{i+1} e_i e_{i+1} != lambda e_{i+1}");
  }
  for (std::size_t i = 1; i <= top; ++i)
    for (std::size_t j = i + 2; j <= top; ++j) {
      const Algebra& a = t.levels[j].alg;
      Vec ei = t.jones(i, j), ej = t.levels[j].jones;
      bool ok = a.commute(ei, ej);
      r.add("commute-e" + std::to_string(i) + "-e" + std::to_string(j), "braid-relations", ok,
            ok ? "" : "e_i e_j != e_j e_i");
    }
  for (std::size_t k = 1; k <= top; ++k) {
    const TowerLevel& lv = t.levels[k];
    const Algebra& a = lv.alg;
    const Vec& e = lv.jones;
    auto right = kernels::find_first_failure(a.dim(), [&](std::size_t x) -> std::optional<std::string> {
      Vec xe = a.mul_basis_left(x, e);
      Vec rhs = la::scaled(lambda.inverse(), a.mul(lv.down.project(xe), e));
      if (xe == rhs) return std::nullopt;
      return "x e != lambda^{-1} E(x e) e for x = " + a.labels()[x];
    });
    r.expect("pimsner-popa-right-e" + std::to_string(k), "pimsner-popa",
             right ? std::optional(right->witness) : std::nullopt);
    auto left = kernels::find_first_failure(a.dim(), [&](std::size_t x) -> std::optional<std::string> {
      Vec ex = a.mul_basis_right(e, x);
      Vec rhs = la::scaled(lambda.inverse(), a.mul(e, lv.down.project(ex)));
      if (ex == rhs) return std::nullopt;
      return "e x != lambda^{-1} e E(e x) for x = " + a.labels()[x];
    });
    r.expect("pimsner-popa-left-e" + std::to_string(k), "pimsner-popa",
             left ? std::optional(left->witness) : std::nullopt);
  }
}

}  // namespace

Tower build_tower(const MarkovCertificate& cert, std::size_t depth) {
  Tower t{cert, {ground_level(cert)}, Report("jones-tower")};
  for (std::size_t k = 0; k < depth; ++k) {
    t.levels.push_back(basic_construction(t));
    t.report.append(t.levels.back().report, level_name(k + 1));
  }
  if (depth >= 1) {
    // The Jones dual bases give y_i x_i = lambda^{-2} e_1, so for M_1 / M the
    // symmetric product condition is replaced by T_1 o phi = T_0, checked below.
    MarkovCertificate c1 = certify_markov(t.levels[1].down, t.levels[1].duals, t.levels[0].trace);
    Report kept(c1.report.pipeline());
    for (const auto& c : c1.report.checks())
      if (c.name != "symmetric-product") kept.add(c.name, c.anchor, c.passed, c.witness);
    t.report.append(kept, "M1/M");
    centralizer_checks(t, t.report);
  }
  relation_checks(t, t.report);
  return t;
}

}  // namespace wha
