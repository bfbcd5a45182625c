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


#include "wha/markov/derived.hpp"

#include <functional>
#include <tuple>

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
  std::size_t j, k;
  Scalar c;
};

// Nonzero coefficients of a vector of B (x) B.
std::vector<Term> terms(std::span<const Scalar> t, std::size_t d) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) out.push_back({i / d, i % d, t[i]});
  return out;
}

class Checker {
 public:
  explicit Checker(DerivedWeakHopf& dw)
      : dw_(dw), f_(dw.ctx.frame), lat_(dw.ctx.lattice), m2_(f_.M2), h_(dw.B_whopf), d_(h_.dim()) {
    bb_ = lat_.B.basis();
    ab_ = lat_.A.basis();
    winv_ = dw.ctx.pairing.w_inv;
    w_ = dw.ctx.pairing.w;
    for (std::size_t m = 0; m < d_; ++m) delta_.push_back(terms(h_.coproduct(h_.alg.basis(m)), d_));
    unit_delta_ = terms(h_.coproduct(h_.alg.one()), d_);
  }

  void run() {
    Report& r = dw_.report;
    r.append(verify_axioms(h_), "B");
    counit();
    antipode();
    coproduct();
    jones_lemma();
    expectation_identities();
    counital_identities();
    integrals();
    dual_side();
  }

 private:
  Vec B(std::span<const Scalar> c) const { return lat_.B.combine(c); }
  Vec Bb(std::size_t m) const { return bb_[m]; }
  std::optional<Vec> coords(std::span<const Scalar> x) const { return lat_.B.coordinates(x); }
  Vec S(std::span<const Scalar> c) const { return h_.S.apply(c); }
  Vec Sinv(std::span<const Scalar> c) const { return dw_.S_inv.apply(c); }
  Vec unit(std::size_t m) const { return h_.alg.basis(m); }
  std::string str(std::span<const Scalar> x) const { return m2_.element_to_string(x); }
  std::string bname(std::size_t m) const { return "b" + std::to_string(m) + " = " + str(bb_[m]); }
  Vec EA(std::span<const Scalar> x) const { return dw_.ctx.exps.EA.apply(x); }
  Vec EB(std::span<const Scalar> x) const { return dw_.ctx.exps.EB.apply(x); }
  Vec EM1(std::span<const Scalar> x) const { return f_.EM1.apply(x); }
  Vec mul(std::initializer_list<Vec> xs) const { return m2_.mul(xs); }
  Vec scaled(const Scalar& s, std::span<const Scalar> x) const { return la::scaled(s, x); }

  void expect(const std::string& name, const std::string& anchor, std::size_t n, const Probe& p) {
    dw_.report.expect(name, anchor, scan(n, p));
  }

  void counit() {
    expect("counit-trace-formula", "derived-counit", d_, [&](std::size_t m) -> std::optional<std::string> {
      Scalar rhs = f_.lambda_inv * f_.T(mul({f_.e2, w_, Bb(m)}));
      if (h_.eps[m] == rhs) return std::nullopt;
      return "eps(b) != lambda^{-1} T(e_2 w b) for " + bname(m);
    });
    expect("counit-antipode-invariant", "derived-counit", d_, [&](std::size_t m) -> std::optional<std::string> {
      if (h_.counit(S(unit(m))) == h_.eps[m]) return std::nullopt;
      return "eps(S(b)) != eps(b) for " + bname(m);
    });
  }

  void antipode() {
    Report& r = dw_.report;
    const auto& fterms = dw_.ctx.pairing.f;
    Vec d1 = h_.coproduct(h_.alg.one());
    Vec via_inv(d_ * d_), via_s(d_ * d_);
    bool in_b = true;
    for (const auto& [x, y] : fterms) {
      auto cx = coords(x), cy = coords(y);
      if (!cx || !cy) {
        in_b = false;
        break;
      }
      via_inv = la::add(via_inv, kron_vec(Sinv(*cx), *cy));
      via_s = la::add(via_s, kron_vec(S(*cx), *cy));
    }
    r.add("unit-coproduct-separability", "derived-coproduct", in_b && d1 == via_inv,
          in_b && d1 == via_inv ? "" : "Delta(1) != S^{-1}(f^1) (x) f^2");
    r.add("unit-coproduct-separability-antipode", "derived-coproduct", in_b && d1 == via_s,
          in_b && d1 == via_s ? "" : "Delta(1) != S(f^1) (x) f^2");

    const Scalar l3 = f_.lambda_inv * f_.lambda_inv * f_.lambda_inv;
    expect("antipode-inverse-formula", "derived-antipode", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec inner = EA(mul({Bb(m), f_.e1, f_.e2}));
      Vec rhs = scaled(l3, mul({winv_, EB(mul({f_.e1, f_.e2, inner})), w_}));
      if (B(Sinv(unit(m))) == rhs) return std::nullopt;
      return "S^{-1}(b) != lambda^{-3} w^{-1} E_B(e_1 e_2 E_A(b e_1 e_2)) w for " + bname(m);
    });

    std::vector<Vec> sv;
    for (const auto& v : lat_.V.basis()) sv.push_back(B(S(*coords(v))));
    Subspace img = Subspace::span(sv, m2_.dim());
    bool vw = img.contains(lat_.W) && lat_.W.contains(img);
    r.add("antipode-maps-v-to-w", "derived-antipode", vw, vw ? "" : "S(V) != W");

    expect("antipode-twisted-involution", "derived-antipode", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec inner = mul({w_, B(Sinv(unit(m))), winv_});
      auto c = coords(inner);
      if (c && mul({w_, B(Sinv(*c)), winv_}) == Bb(m)) return std::nullopt;
      return "b != w S^{-1}(w S^{-1}(b) w^{-1}) w^{-1} for " + bname(m);
    });

    expect("antipode-anti-multiplicative", "derived-antipode", d_ * d_, [&](std::size_t s) -> std::optional<std::string> {
      std::size_t a = s / d_, b = s % d_;
      Vec lhs = S(la::to_dense(h_.alg.product(a, b), d_));
      if (lhs == h_.alg.mul(S(unit(b)), S(unit(a)))) return std::nullopt;
      return "S(b b') != S(b') S(b) for " + bname(a) + ", " + bname(b);
    });

    auto wc = coords(winv_);
    dw_.g = wc ? mul({B(S(*wc)), w_}) : Vec(m2_.dim());
    auto ginv = m2_.inverse(dw_.g);
    r.add("antipode-square-element-invertible", "derived-antipode", ginv.has_value(),
          ginv ? "" : "g = S(w^{-1}) w is not invertible");
    if (ginv) {
      Vec gi = *ginv;
      expect("antipode-square-conjugation", "derived-antipode", d_, [&](std::size_t m) -> std::optional<std::string> {
        if (B(S(S(unit(m)))) == mul({dw_.g, Bb(m), gi})) return std::nullopt;
        return "S^2(b) != g b g^{-1} for " + bname(m);
      });
    }
    auto vb = lat_.V.basis();
    expect("antipode-square-trivial-on-v", "derived-antipode", vb.size(), [&](std::size_t i) -> std::optional<std::string> {
      Vec c = *coords(vb[i]);
      if (S(S(c)) == c) return std::nullopt;
      return "S^2(v) != v for v = " + str(vb[i]);
    });
  }

  void coproduct() {
    auto vb = lat_.V.basis();
    std::vector<Vec> vc;
    for (const auto& v : vb) vc.push_back(*coords(v));
    const Vec one = h_.alg.one();
    expect("coproduct-right-v-linear", "derived-coproduct", d_ * vc.size(), [&](std::size_t s) -> std::optional<std::string> {
      std::size_t m = s / vc.size(), i = s % vc.size();
      Vec lhs = h_.coproduct(h_.alg.mul(unit(m), vc[i]));
      Vec rhs = tensor_product_dense(h_.alg, 2, h_.coproduct(unit(m)), kron_vec(vc[i], one));
      if (lhs == rhs) return std::nullopt;
      return "Delta(b v) != Delta(b)(v (x) 1) for " + bname(m) + ", v = " + str(vb[i]);
    });
    expect("coproduct-v-balanced", "derived-coproduct", d_ * vc.size(), [&](std::size_t s) -> std::optional<std::string> {
      std::size_t m = s / vc.size(), i = s % vc.size();
      Vec db = h_.coproduct(unit(m));
      Vec lhs = tensor_product_dense(h_.alg, 2, db, kron_vec(one, vc[i]));
      Vec rhs = tensor_product_dense(h_.alg, 2, db, kron_vec(S(vc[i]), one));
      if (lhs == rhs) return std::nullopt;
      return "Delta(b)(1 (x) v) != Delta(b)(S(v) (x) 1) for " + bname(m) + ", v = " + str(vb[i]);
    });
    Vec d1 = h_.coproduct(one);
    expect("coproduct-absorbs-unit-coproduct", "derived-coproduct", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec db = h_.coproduct(unit(m));
      if (tensor_product_dense(h_.alg, 2, db, d1) == db) return std::nullopt;
      return "Delta(b) Delta(1) != Delta(b) for " + bname(m);
    });
    expect("coproduct-antipode-flip", "derived-coproduct", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec lhs = h_.coproduct(S(unit(m)));
      Vec rhs(d_ * d_);
      for (const auto& t : delta_[m]) rhs = la::add(rhs, la::scaled(t.c, kron_vec(S(unit(t.k)), S(unit(t.j)))));
      if (lhs == rhs) return std::nullopt;
      return "Delta(S(b)) != S(b_2) (x) S(b_1) for " + bname(m);
    });
    expect("coproduct-multiplicative", "derived-coproduct", d_ * d_, [&](std::size_t s) -> std::optional<std::string> {
      std::size_t a = s / d_, b = s % d_;
      Vec lhs = h_.coproduct(la::to_dense(h_.alg.product(a, b), d_));
      Vec rhs = tensor_product_dense(h_.alg, 2, h_.coproduct(unit(a)), h_.coproduct(unit(b)));
      if (lhs == rhs) return std::nullopt;
      return "Delta(b b') != Delta(b) Delta(b') for " + bname(a) + ", " + bname(b);
    });
  }

  void jones_lemma() {
    Report& r = dw_.report;
    auto e2c = coords(f_.e2);
    r.add("jones-in-b", "derived-jones", e2c.has_value(), e2c ? "" : "e_2 is not in B");
    if (!e2c) return;
    Vec conj = mul({winv_, f_.e2, w_});
    bool inv_ok = B(Sinv(*e2c)) == conj;
    r.add("antipode-inverse-of-jones", "derived-jones", inv_ok, inv_ok ? "" : "S^{-1}(e_2) != w^{-1} e_2 w");
    bool s_ok = B(S(*e2c)) == conj;
    r.add("antipode-of-jones", "derived-jones", s_ok, s_ok ? "" : "S(e_2) != w^{-1} e_2 w");
    auto vb = lat_.V.basis();
    expect("jones-absorbs-v", "derived-jones", vb.size(), [&](std::size_t i) -> std::optional<std::string> {
      Vec sv = B(S(*coords(vb[i])));
      if (mul({vb[i], f_.e2}) == mul({sv, f_.e2})) return std::nullopt;
      return "v e_2 != S(v) e_2 for v = " + str(vb[i]);
    });
    expect("target-counit-expectation-form", "derived-jones", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec lhs = scaled(f_.lambda_inv, mul({EA(mul({f_.e2, w_, Bb(m)})), winv_}));
      Vec rhs(m2_.dim());
      for (const auto& t : unit_delta_) {
        Scalar e = h_.counit(la::to_dense(h_.alg.product(m, t.j), d_));
        rhs = la::add(rhs, la::scaled(t.c * e, Bb(t.k)));
      }
      if (lhs == rhs) return std::nullopt;
      return "lambda^{-1} E_A(e_2 w b) w^{-1} != eps(b 1_1) 1_2 for " + bname(m);
    });
  }

  void expectation_identities() {
    const auto& gram = dw_.ctx.pairing.gram;
    const std::size_t da = ab_.size();
    const Scalar& li = f_.lambda_inv;
    expect("expectation-b-pairing", "derived-expectations", da * d_, [&](std::size_t s) -> std::optional<std::string> {
      std::size_t i = s / d_, m = s % d_;
      Vec lhs = scaled(li, EB(mul({f_.e1, w_, Bb(m), ab_[i]})));
      Vec rhs(m2_.dim());
      for (const auto& t : delta_[m]) rhs = la::add(rhs, la::scaled(t.c * gram(i, t.j), mul({w_, Bb(t.k)})));
      if (lhs == rhs) return std::nullopt;
      return "lambda^{-1} E_B(e_1 w b a) != <a, b_1> w b_2 for a = " + str(ab_[i]) + ", " + bname(m);
    });
    expect("expectation-a-reconstruction", "derived-expectations", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec acc(m2_.dim());
      for (const auto& t : delta_[m])
        acc = la::add(acc, la::scaled(t.c, mul({Bb(t.k), EA(mul({f_.e2, w_, Bb(t.j)})), winv_})));
      if (scaled(li, acc) == Bb(m)) return std::nullopt;
      return "lambda^{-1} b_2 E_A(e_2 w b_1) w^{-1} != b for " + bname(m);
    });
    expect("jones-commutation", "derived-expectations", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec lhs = mul({winv_, f_.e1, w_, Bb(m)});
      Vec acc(m2_.dim());
      for (const auto& t : delta_[m])
        acc = la::add(acc, la::scaled(t.c, mul({Bb(t.k), winv_, EA(mul({f_.e2, f_.e1, w_, Bb(t.j)}))})));
      if (lhs == scaled(li, acc)) return std::nullopt;
      return "w^{-1} e_1 w b != lambda^{-1} b_2 w^{-1} E_A(e_2 e_1 w b_1) for " + bname(m);
    });

    auto xb = lat_.M1.basis();
    const std::size_t n1 = xb.size();
    expect("m1-commutation", "derived-expectations", n1 * d_, [&](std::size_t s) -> std::optional<std::string> {
      std::size_t x = s / d_, m = s % d_;
      Vec lhs = mul({winv_, xb[x], Bb(m)});
      Vec acc(m2_.dim());
      for (const auto& t : delta_[m])
        acc = la::add(acc, la::scaled(t.c, mul({Bb(t.k), winv_, EM1(mul({f_.e2, xb[x], Bb(t.j)}))})));
      if (lhs == scaled(li, acc)) return std::nullopt;
      return "w^{-1} x b != lambda^{-1} b_2 w^{-1} E_{M1}(e_2 x b_1) for x = " + str(xb[x]) + ", " + bname(m);
    });

    // E_{M1}(e_2 w y x b) = lambda^{-1} E_{M1}(e_2 w y b_2) w^{-1} E_{M1}(e_2 w x b_1),
    // with both factors precomputed in M_1 coordinates.
    std::vector<Vec> e2wx(n1), ycol(n1 * d_), xcol(n1 * d_);
    kernels::parallel_for(n1, [&](std::size_t x) { e2wx[x] = mul({f_.e2, w_, xb[x]}); });
    kernels::parallel_for(n1 * d_, [&](std::size_t s) {
      std::size_t x = s / d_, k = s % d_;
      ycol[s] = EM1(m2_.mul(e2wx[x], Bb(k)));
      xcol[s] = m2_.mul(winv_, ycol[s]);
    });
    expect("m1-expectation-product", "derived-expectations", n1 * n1 * d_, [&](std::size_t s) -> std::optional<std::string> {
      std::size_t y = s / (n1 * d_), x = (s / d_) % n1, m = s % d_;
      Vec lhs = EM1(mul({e2wx[y], xb[x], Bb(m)}));
      Vec acc(m2_.dim());
      for (const auto& t : delta_[m]) acc = la::add(acc, la::scaled(t.c, m2_.mul(ycol[y * d_ + t.k], xcol[x * d_ + t.j])));
      if (lhs == scaled(li, acc)) return std::nullopt;
      return "E_{M1}(e_2 w y x b) != lambda^{-1} E_{M1}(e_2 w y b_2) w^{-1} E_{M1}(e_2 w x b_1) for y = " +
             str(xb[y]) + ", x = " + str(xb[x]) + ", " + bname(m);
    });
  }

  void counital_identities() {
    expect("source-counital-identity", "derived-counital", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec lhs(d_), rhs(d_);
      for (const auto& t : delta_[m]) lhs = la::add(lhs, la::scaled(t.c, h_.alg.mul(S(unit(t.j)), unit(t.k))));
      for (const auto& t : unit_delta_)
        rhs = la::add(rhs, la::scaled(t.c * h_.counit(la::to_dense(h_.alg.product(m, t.k), d_)), unit(t.j)));
      if (lhs == rhs) return std::nullopt;
      return "S(b_1) b_2 != 1_1 eps(b 1_2) for " + bname(m);
    });
    expect("target-counital-identity", "derived-counital", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec lhs(d_), rhs(d_);
      for (const auto& t : delta_[m]) lhs = la::add(lhs, la::scaled(t.c, h_.alg.mul(unit(t.j), S(unit(t.k)))));
      for (const auto& t : unit_delta_)
        rhs = la::add(rhs, la::scaled(t.c * h_.counit(la::to_dense(h_.alg.product(t.j, m), d_)), unit(t.k)));
      if (lhs == rhs) return std::nullopt;
      return "b_1 S(b_2) != eps(1_1 b) 1_2 for " + bname(m);
    });
    expect("target-counit-jones", "derived-counital", d_, [&](std::size_t m) -> std::optional<std::string> {
      Vec lhs = B(h_.eps_t(unit(m)));
      if (lhs == scaled(f_.lambda_inv, EA(mul({Bb(m), f_.e2})))) return std::nullopt;
      return "eps_t(b) != lambda^{-1} E_A(b e_2) for " + bname(m);
    });
    CounitalData cd = counital(h_);
    std::vector<Vec> ht, hs;
    for (const auto& v : cd.Ht.basis()) ht.push_back(B(v));
    for (const auto& v : cd.Hs.basis()) hs.push_back(B(v));
    Subspace sht = Subspace::span(ht, m2_.dim()), shs = Subspace::span(hs, m2_.dim());
    bool tv = sht.contains(lat_.V) && lat_.V.contains(sht);
    bool sw = shs.contains(lat_.W) && lat_.W.contains(shs);
    dw_.report.add("target-subalgebra-is-v", "derived-counital", tv, tv ? "" : "H_t != V");
    dw_.report.add("source-subalgebra-is-w", "derived-counital", sw, sw ? "" : "H_s != W");
  }

  void integrals() {
    Report& r = dw_.report;
    const Vec& e2 = f_.e2;
    expect("jones-left-integral", "haar-integral", d_, [&](std::size_t m) -> std::optional<std::string> {
      if (mul({Bb(m), e2}) == mul({B(h_.eps_t(unit(m))), e2})) return std::nullopt;
      return "b e_2 != eps_t(b) e_2 for " + bname(m);
    });
    Vec e2w = mul({e2, w_});
    integral_checks("e2w", e2w, false);
    auto c = coords(e2w);
    if (c) {
      Vec emw = f_.EM.apply(w_);
      bool ok = B(h_.eps_t(*c)) == emw;
      r.add("e2w-target-counit-value", "haar-integral", ok, ok ? "" : "eps_t(e_2 w) != E_M(w)");
    }
    auto e2c = coords(e2);
    if (!e2c) return;
    dw_.haar = mul({e2, B(Sinv(*e2c))});
    bool form = dw_.haar == mul({f_.EM.apply(winv_), e2, w_});
    r.add("haar-product-form", "haar-integral", form, form ? "" : "e_2 S^{-1}(e_2) != E_M(w^{-1}) e_2 w");
    integral_checks("haar", dw_.haar, true);
  }

  // Two-sided integral with S(l) = l; normalization only when `normalized`.
  void integral_checks(const std::string& name, const Vec& l, bool normalized) {
    Report& r = dw_.report;
    expect(name + "-left-integral", "haar-integral", d_, [&](std::size_t m) -> std::optional<std::string> {
      if (mul({Bb(m), l}) == mul({B(h_.eps_t(unit(m))), l})) return std::nullopt;
      return "b l != eps_t(b) l for " + bname(m);
    });
    expect(name + "-right-integral", "haar-integral", d_, [&](std::size_t m) -> std::optional<std::string> {
      if (mul({l, Bb(m)}) == mul({l, B(h_.eps_s(unit(m)))})) return std::nullopt;
      return "l b != l eps_s(b) for " + bname(m);
    });
    auto lc = coords(l);
    r.add(name + "-in-b", "haar-integral", lc.has_value(), lc ? "" : "not an element of B");
    if (!lc) return;
    bool sl = S(*lc) == *lc;
    r.add(name + "-antipode-invariant", "haar-integral", sl, sl ? "" : "S(l) != l");
    if (!normalized) return;
    bool nt = h_.eps_t(*lc) == h_.alg.one();
    r.add(name + "-normalized-target", "haar-integral", nt, nt ? "" : "eps_t(l) != 1");
    bool ns = h_.eps_s(*lc) == h_.alg.one();
    r.add(name + "-normalized-source", "haar-integral", ns, ns ? "" : "eps_s(l) != 1");
  }

  void dual_side() {
    Report& r = dw_.report;
    const Mat& gram = dw_.ctx.pairing.gram;
    const std::size_t da = ab_.size();
    Algebra aalg = m2_.induced(lat_.A);
    dw_.A_whopf = transport(dual(h_), gram.transpose());
    dw_.A_whopf.alg = Algebra::from_products(da, [&] {
      std::vector<SparseVec> p(da * da);
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) p[i * da + j] = dw_.A_whopf.alg.product(i, j);
      return p;
    }(), dw_.A_whopf.alg.one(), aalg.labels(), aalg.modulus());
    bool same = dw_.A_whopf.alg == aalg;
    r.add("dual-algebra-is-a", "dual-weak-hopf", same,
          same ? "" : "the algebra dual to B under the pairing differs from A");
    r.append(verify_axioms(dw_.A_whopf), "A");

    // <a a', b> = <a, b_1><a', b_2>.
    const Scalar l2 = f_.lambda_inv * f_.lambda_inv;
    std::vector<Vec> beta(d_);
    for (std::size_t m = 0; m < d_; ++m) beta[m] = f_.trace_form.apply(mul({f_.e2, f_.e1, w_, Bb(m)}));
    expect("pairing-coproduct", "dual-weak-hopf", da * da, [&](std::size_t s) -> std::optional<std::string> {
      std::size_t i = s / da, k = s % da;
      Vec aa = m2_.mul(ab_[i], ab_[k]);
      for (std::size_t m = 0; m < d_; ++m) {
        Scalar lhs = l2 * la::dot(aa, beta[m]);
        Scalar rhs(0);
        for (const auto& t : delta_[m]) rhs += t.c * gram(i, t.j) * gram(k, t.k);
        if (lhs != rhs)
          return "<a a', b> != <a, b_1><a', b_2> for a = " + str(ab_[i]) + ", a' = " + str(ab_[k]) + ", " + bname(m);
      }
      return std::nullopt;
    });
    bool counit_ok = true;
    for (std::size_t m = 0; m < d_ && counit_ok; ++m)
      counit_ok = h_.eps[m] == dw_.ctx.pairing.pair(f_, m2_.one(), Bb(m));
    r.add("pairing-counit", "dual-weak-hopf", counit_ok, counit_ok ? "" : "eps(b) != <1, b>");
    bool sadj = dw_.A_whopf.S.transpose() * gram == gram * h_.S;
    r.add("pairing-antipode-adjoint", "dual-weak-hopf", sadj, sadj ? "" : "<S(a), b> != <a, S(b)>");

    // Delta_A(1) lies in A (x) U.
    Subspace ua = [&] {
      std::vector<Vec> us;
      for (const auto& u : lat_.U.basis()) us.push_back(*lat_.A.coordinates(u));
      return Subspace::span(us, da);
    }();
    Vec d1 = dw_.A_whopf.coproduct(dw_.A_whopf.alg.one());
    bool in_au = true;
    for (std::size_t i = 0; i < da && in_au; ++i) {
      Vec right(d1.begin() + static_cast<std::ptrdiff_t>(i * da), d1.begin() + static_cast<std::ptrdiff_t>((i + 1) * da));
      in_au = ua.contains(right);
    }
    r.add("a-unit-coproduct-in-a-u", "dual-weak-hopf", in_au, in_au ? "" : "Delta_A(1) is not in A (x) U");
    bool dims = da == d_;
    r.add("dimension-a-equals-b", "dual-weak-hopf", dims, dims ? "" : "dim A != dim B");
  }

  DerivedWeakHopf& dw_;
  const Frame& f_;
  const CentralizerLattice& lat_;
  const Algebra& m2_;
  const WeakHopf& h_;
  const std::size_t d_;
  std::vector<Vec> bb_, ab_;
  Vec w_, winv_;
  std::vector<std::vector<Term>> delta_;
  std::vector<Term> unit_delta_;
};

}  // namespace

DerivedWeakHopf derive_whopf(Depth2Context ctx) {
  const Frame& f = ctx.frame;
  const CentralizerLattice& lat = ctx.lattice;
  const PairingData& p = ctx.pairing;
  const Algebra& m2 = f.M2;
  auto ab = lat.A.basis(), bb = lat.B.basis();
  const std::size_t d = bb.size();
  if (ab.size() != d) throw SingularGram("dim A != dim B");
  auto ginv = la::inverse(p.gram);
  auto galt_inv = la::inverse(p.gram_alt);
  if (!ginv || !galt_inv) throw SingularGram("the pairing of A and B is degenerate");

  const Scalar l2 = f.lambda_inv * f.lambda_inv;
  std::vector<Vec> aa(d * d), beta(d);
  kernels::parallel_for(d * d, [&](std::size_t s) { aa[s] = m2.mul(ab[s / d], ab[s % d]); });
  kernels::parallel_for(d, [&](std::size_t m) { beta[m] = f.trace_form.apply(f.mul({f.e2, f.e1, p.w, bb[m]})); });

  Mat gt_inv = ginv->transpose();
  std::vector<SparseVec> delta(d);
  Vec eps(d);
  kernels::parallel_for(d, [&](std::size_t m) {
    Mat r(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l) r(i, l) = l2 * la::dot(aa[i * d + l], beta[m]);
    Mat dm = *ginv * r * gt_inv;
    SparseVec v;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (!dm(j, k).is_zero()) v.emplace_back(static_cast<std::uint32_t>(j * d + k), dm(j, k));
    delta[m] = std::move(v);
    eps[m] = l2 * f.T(f.mul({f.e2, f.e1, p.w, bb[m]}));
  });
  Mat S = *galt_inv * p.gram;

  Algebra balg = m2.induced(lat.B);
  DerivedWeakHopf dw{std::move(ctx), WeakHopf::make(balg, std::move(delta), std::move(eps), S), {}, {}, {}, {},
                     Report("derived-weak-hopf")};
  auto sinv = la::inverse(S);
  if (!sinv) {
    dw.report.add("antipode-invertible", "derived-antipode", false, "S is singular");
    return dw;
  }
  dw.S_inv = *sinv;
  Checker(dw).run();
  return dw;
}

}  // namespace wha
