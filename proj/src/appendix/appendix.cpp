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


#include "wha/appendix/appendix.hpp"

#include <functional>

#include "wha/exactla/echelon.hpp"
#include "wha/kernels/parallel.hpp"
#include "wha/markov/depth2.hpp"

namespace wha {

namespace {

using Probe = std::function<std::optional<std::string>(std::size_t)>;

std::optional<std::string> scan(std::size_t n, const Probe& probe) {
  auto f = kernels::find_first_failure(n, probe);
  if (f) return f->witness;
  return std::nullopt;
}

std::string word_name(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto i : w) s += "e" + std::to_string(i);
  return s;
}

Word shifted(Word w) {
  for (auto& i : w) i += 2;
  return w;
}

// e_{hi} e_{hi-1} ... e_{lo}
Word descending(std::size_t hi, std::size_t lo) {
  Word w;
  for (std::size_t i = hi; i >= lo; --i) w.push_back(i);
  return w;
}

Word ascending(std::size_t lo, std::size_t hi) {
  Word w;
  for (std::size_t i = lo; i <= hi; ++i) w.push_back(i);
  return w;
}

Scalar power(const Scalar& x, std::size_t k) {
  Scalar out(1);
  for (std::size_t i = 0; i < k; ++i) out *= x;
  return out;
}

Word composite_word(std::size_t n) {
  Word w;
  for (std::size_t k = 0; k <= n; ++k) {
    Word block = descending(n + 1 + k, 1 + k);
    w.insert(w.end(), block.begin(), block.end());
  }
  return w;
}

std::vector<Vec> columns(const Mat& m) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

Vec composite_element(const Tower& t, std::size_t n, std::size_t at) {
  return la::scaled(power(t.lambda_inv(), n * (n + 1) / 2), evaluate_word(t, composite_word(n), at));
}

// x'_i = x_j x_i e_1 y_j and y'_i = x_k y_i e_1 y_k.
void v_dual_bases(const Tower& t, const Depth2Example& ex, Report& r) {
  const Algebra& M = t.algebra(0);
  const Algebra& M1 = t.algebra(1);
  const Mat up = t.lift_matrix(0, 1);
  const Vec& e1 = t.jones(1, 1);
  std::vector<Vec> xp, yp;
  for (std::size_t i = 0; i < ex.xs.size(); ++i) {
    Vec x(M1.dim()), y(M1.dim());
    for (std::size_t j = 0; j < ex.xs.size(); ++j) {
      x = la::add(x, M1.mul({up.apply(M.mul(ex.xs[j], ex.xs[i])), e1, up.apply(ex.ys[j])}));
      y = la::add(y, M1.mul({up.apply(M.mul(ex.xs[j], ex.ys[i])), e1, up.apply(ex.ys[j])}));
    }
    xp.push_back(std::move(x));
    yp.push_back(std::move(y));
  }
  Subspace V = centralizer(M1, columns(up));
  bool in_v = true;
  for (std::size_t i = 0; i < xp.size(); ++i) in_v = in_v && V.contains(xp[i]) && V.contains(yp[i]);
  r.add("dual-bases-in-v", "depth2-example", in_v, in_v ? "" : "x'_i or y'_i outside C_{M_1}(M)");
  auto bad = dual_bases_violation(t.levels[1].down, DualBases{xp, yp, std::nullopt});
  r.add("v-dual-bases", "depth2-example", !bad, bad ? *bad : "");

}

}  // namespace

Vec evaluate_word(const Tower& t, const Word& w, std::size_t at) {
  const Algebra& a = t.algebra(static_cast<int>(at));
  Vec out = a.one();
  for (auto i : w) out = a.mul(out, t.jones(i, at));
  return out;
}

std::vector<Word> tl_basis_words(const Tower& t, std::size_t n, std::size_t at) {
  if (n > at) throw std::invalid_argument("tl_basis_words: e_n does not live at this level");
  const Algebra& a = t.algebra(static_cast<int>(at));
  std::vector<Vec> gens;
  for (std::size_t i = 1; i <= n; ++i) gens.push_back(t.jones(i, at));
  la::EchelonBuilder span(a.dim());
  std::vector<Word> words{Word{}};
  std::vector<Vec> values{a.one()};
  span.add_dense(a.one());
  for (std::size_t k = 0; k < words.size(); ++k)
    for (std::size_t i = 1; i <= n; ++i) {
      Vec v = a.mul(values[k], gens[i - 1]);
      if (!span.add_dense(v)) continue;
      Word w = words[k];
      w.push_back(i);
      words.push_back(std::move(w));
      values.push_back(std::move(v));
    }
  return words;
}

Shifted shift_tau2(const Tower& t, std::span<const Scalar> x, std::size_t n, std::size_t at) {
  if (n + 2 > at) throw std::invalid_argument("shift_tau2: level too low for the shifted generators");
  const Algebra& a = t.algebra(static_cast<int>(at));
  const Scalar lambda = t.lambda();
  auto words = tl_basis_words(t, n, at);
  std::vector<Vec> vals, svals;
  for (const auto& w : words) {
    vals.push_back(evaluate_word(t, w, at));
    svals.push_back(evaluate_word(t, shifted(w), at));
  }
  Mat basis = Mat::from_columns(vals, a.dim());
  auto c = la::solve(basis, x);
  if (!c) throw NotInTLSubalgebra("element is not in the span of words in e_1..e_" + std::to_string(n));
  Shifted out{Vec(a.dim()), Report("tau2")};
  for (std::size_t j = 0; j < words.size(); ++j) la::axpy((*c)[j], svals[j], out.image);

  Report& r = out.report;
  std::vector<Vec> g(n + 3);
  for (std::size_t i = 3; i <= n + 2; ++i) g[i] = t.jones(i, at);
  r.expect("shifted-idempotent", "tau2", scan(n, [&](std::size_t k) -> std::optional<std::string> {
             const Vec& e = g[k + 3];
             if (a.mul(e, e) == e) return std::nullopt;
             return "e" + std::to_string(k + 3) + " is not idempotent";
           }));
  r.expect("shifted-braid", "tau2", scan(n > 1 ? n - 1 : 0, [&](std::size_t k) -> std::optional<std::string> {
             const Vec& p = g[k + 3];
             const Vec& q = g[k + 4];
             if (a.mul({p, q, p}) == la::scaled(lambda, p) && a.mul({q, p, q}) == la::scaled(lambda, q))
               return std::nullopt;
             return "braid relation fails for e" + std::to_string(k + 3) + ", e" + std::to_string(k + 4);
           }));
  r.expect("shifted-commute", "tau2", scan(n * n, [&](std::size_t k) -> std::optional<std::string> {
             std::size_t i = k / n + 3, j = k % n + 3;
             if (i + 2 > j || a.commute(g[i], g[j])) return std::nullopt;
             return "e" + std::to_string(i) + " and e" + std::to_string(j) + " do not commute";
           }));
  // Every product w e_i, written in the word basis, keeps its coefficients
  // after the shift.
  r.expect("relations-preserved", "tau2", scan(words.size() * n, [&](std::size_t k) -> std::optional<std::string> {
             std::size_t j = k / n, i = k % n + 1;
             Word w = words[j];
             w.push_back(i);
             auto coeffs = la::solve(basis, evaluate_word(t, w, at));
             if (!coeffs) return "word " + word_name(w) + " left the span";
             Vec rhs(a.dim());
             for (std::size_t m = 0; m < words.size(); ++m) la::axpy((*coeffs)[m], svals[m], rhs);
             if (evaluate_word(t, shifted(w), at) == rhs) return std::nullopt;
             return "relation for " + word_name(w) + " is not preserved";
           }));
  return out;
}

CompositeData composite_idempotent(const Tower& t, std::size_t n, std::size_t max_dim) {
  const std::size_t L = 2 * n + 1;
  if (t.depth() < L) throw std::invalid_argument("composite_idempotent: tower must reach M_" + std::to_string(L));
  const Algebra& top = t.algebra(static_cast<int>(L));
  if (top.dim() > max_dim)
    throw DimensionBudget("M_" + std::to_string(L) + " has dim " + std::to_string(top.dim()) + " > " +
                          std::to_string(max_dim));
  const int ni = static_cast<int>(n), Li = static_cast<int>(L);
  CompositeData cd;
  cd.n = n;
  cd.f = composite_element(t, n, L);
  cd.F_n = t.expect_matrix(ni, -1);
  cd.F_M_n = t.expect_matrix(Li, ni);
  cd.report = Report("composite-idempotent-" + std::to_string(n));
  Report& r = cd.report;
  const Vec& f = cd.f;

  bool idem = top.mul(f, f) == f;
  r.add("idempotent", "composite-idempotent", idem, idem ? "" : "f_n^2 != f_n");

  const Mat up_n = t.lift_matrix(ni, Li);
  const Mat n_up = t.lift_matrix(-1, Li);
  const auto mn = columns(up_n);
  const Algebra& Mn = t.algebra(ni);
  const Algebra& N = t.algebra(-1);

  auto prods = kernels::parallel_map<Vec>(mn.size() * mn.size(), [&](std::size_t k) {
    return top.mul({mn[k / mn.size()], f, mn[k % mn.size()]});
  });
  bool spans = Subspace::span(prods, top.dim()).dim() == top.dim();
  r.add("spans-top", "composite-idempotent", spans, spans ? "" : "M_n f_n M_n != M_{2n+1}");

  r.expect("compression", "composite-idempotent", scan(mn.size(), [&](std::size_t i) -> std::optional<std::string> {
             Vec Fx = n_up.apply(cd.F_n.column(i));
             Vec fxf = top.mul({f, mn[i], f});
             if (fxf == top.mul(f, Fx) && fxf == top.mul(Fx, f)) return std::nullopt;
             return "f_n x f_n != f_n F_n(x) = F_n(x) f_n for x = " + Mn.labels()[i];
           }));

  Vec fm = cd.F_M_n.apply(f);
  auto c = Mn.as_scalar(fm);
  if (c) cd.expectation_value = *c;
  Scalar want = power(t.lambda(), n + 1);
  bool ev = c && *c == want;
  r.add("expectation-value", "composite-idempotent", ev,
        ev ? "" : "F_{M_n}(f_n) = " + Mn.element_to_string(fm) + ", expected " + want.to_string());

  // Both composites against their trace characterizations T(F(x) m) = T(x m).
  const Vec& tN = t.trace(-1);
  const Vec& tn = t.trace(ni);
  const Vec& tL = t.trace(Li);
  const Mat n_in_n = t.lift_matrix(-1, ni);
  r.expect("composite-expectation-trace", "composite-expectation",
           scan(Mn.dim() * N.dim(), [&](std::size_t k) -> std::optional<std::string> {
             std::size_t x = k / N.dim(), m = k % N.dim();
             Scalar lhs = la::dot(tN, N.mul_basis_right(cd.F_n.column(x), m));
             Scalar rhs = la::dot(tn, Mn.mul_basis_left(x, n_in_n.column(m)));
             if (lhs == rhs) return std::nullopt;
             return "T(F_n(x) m) != T(x m) for x = " + Mn.labels()[x];
           }));
  r.expect("top-expectation-trace", "composite-expectation",
           scan(top.dim() * Mn.dim(), [&](std::size_t k) -> std::optional<std::string> {
             std::size_t x = k / Mn.dim(), m = k % Mn.dim();
             Scalar lhs = la::dot(tn, Mn.mul_basis_right(cd.F_M_n.column(x), m));
             Scalar rhs = la::dot(tL, top.mul_basis_left(x, mn[m]));
             if (lhs == rhs) return std::nullopt;
             return "T(F_{M_n}(x) m) != T(x m) for x = " + top.labels()[x];
           }));

  if (n == 0) {
    bool e1 = f == t.jones(1, L);
    r.add("base-case-jones", "composite-idempotent", e1, e1 ? "" : "f_0 != e_1");
    return cd;
  }

  Vec prev = composite_element(t, n - 1, L);
  Shifted tau = shift_tau2(t, prev, 2 * n - 1, L);
  r.append(tau.report);
  Vec rec = top.mul({evaluate_word(t, descending(n + 1, 1), L), tau.image, evaluate_word(t, ascending(2, n + 1), L)});
  rec = la::scaled(power(t.lambda_inv(), n), rec);
  bool same = rec == f;
  r.add("recursive-form", "composite-idempotent", same,
        same ? "" : "f_n != lambda^{-n} (e_{n+1} ... e_1) tau^2(f_{n-1}) (e_2 ... e_{n+1})");

  // tau^2(f_{n-1}) implements E_{M_1} o ... o E_{M_n}: M_{n+1} -> M_1.
  const Mat hat = t.expect_matrix(ni + 1, 1);
  const Mat up1 = t.lift_matrix(1, Li);
  const auto mn1 = columns(t.lift_matrix(ni + 1, Li));
  const Vec& g = tau.image;
  r.expect("shifted-compression", "composite-idempotent", scan(mn1.size(), [&](std::size_t i) -> std::optional<std::string> {
             Vec Fx = up1.apply(hat.column(i));
             Vec gxg = top.mul({g, mn1[i], g});
             if (gxg == top.mul(Fx, g) && gxg == top.mul(g, Fx)) return std::nullopt;
             return "tau^2(f_{n-1}) y tau^2(f_{n-1}) != hat F(y) tau^2(f_{n-1}) for y" + std::to_string(i);
           }));
  return cd;
}

Depth2Example tensor_depth2_example(const Algebra& N, Vec trace_N, const Algebra& U) {
  if (center(N).dim() != 1) throw InvalidExtension("N is not central");
  auto kz = kanzaki_element(U);
  if (!kz) throw InvalidExtension("U is not Kanzaki separable: " + kz.failure);
  const std::size_t du = U.dim(), dn = N.dim();
  auto terms = kz->terms();

  // The trace t with t(u a_i) b_i = u.
  Mat sys(du * du, du);
  Vec rhs(du * du);
  for (std::size_t b = 0; b < du; ++b) {
    rhs[b * du + b] = U.scalar(1);
    for (const auto& [ai, bi] : terms) {
      Vec ua = U.mul_basis_left(b, ai);
      for (std::size_t c = 0; c < du; ++c)
        if (!bi[c].is_zero())
          for (std::size_t d = 0; d < du; ++d) sys(b * du + c, d) += ua[d] * bi[c];
    }
  }
  auto tr = la::solve(sys, rhs);
  if (!tr) throw InvalidExtension("separability element of U has no trace");
  Scalar lambda_inv = la::dot(*tr, U.one());
  if (lambda_inv.is_zero()) throw InvalidExtension("t(1) = 0");
  Scalar lambda = lambda_inv.inverse();

  Algebra M = tensor(N, U);
  Mat embed(dn * du, dn), map(dn, dn * du);
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < du; ++j) {
      embed(i * du + j, i) = U.one()[j];
      map(i, i * du + j) = lambda * (*tr)[j];
    }
  auto e = CondExpectation::make(Inclusion::make(N, M, embed), map);
  Depth2Example out;
  out.center_condition = center(U).dim() == 1;
  out.ext = MarkovExample{"n-tensor-u", e, {}, std::move(trace_N)};
  for (const auto& [ai, bi] : terms) {
    out.xs.push_back(kron_vec(N.one(), ai));
    out.ys.push_back(kron_vec(N.one(), la::scaled(lambda_inv, bi)));
  }
  out.ext.duals = DualBases{out.xs, out.ys, std::nullopt};
  if (auto bad = dual_bases_violation(e, out.ext.duals)) throw InvalidExtension("dual bases in U: " + *bad);
  return out;
}

Depth2Example matrix_depth2_example(std::size_t n, std::uint32_t modulus) {
  Depth2Example ex = tensor_depth2_example(ground_field(modulus), Vec{Scalar(1)}, matrix_algebra(n, modulus));
  ex.ext.name = "q-in-m" + std::to_string(n);
  return ex;
}

Report verify_depth2_example(const Depth2Example& ex) {
  Report r("depth2-example");
  MarkovCertificate cert = certify(ex.ext);
  r.append(cert.report, "certificate");
  r.add("certified", "depth2-example", cert.certified(), cert.certified() ? "" : "not a symmetric Markov extension");
  if (!cert.certified()) return r;
  Tower t = build_tower(cert, 2);
  r.add("tower", "depth2-example", t.report.all_passed(), t.report.all_passed() ? "" : "tower checks failed");

  if (ex.center_condition) v_dual_bases(t, ex, r);

  Frame f = make_frame(t);
  CentralizerLattice lat = centralizers(t, f);
  auto d2 = depth2_check(t, f, lat);
  r.add("depth2", "depth2-example", bool(d2), d2 ? "" : d2.failure);
  return r;
}

}  // namespace wha
