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

#include "wha/whopf/weak_hopf.hpp"

#include <algorithm>

#include "wha/algebra/extension.hpp"
#include "wha/kernels/parallel.hpp"

namespace wha {

namespace {


std::optional<std::string> as_failure(const std::optional<kernels::Failure>& f) {
  if (!f) return std::nullopt;
  return f->witness;
}

Vec dense(const SparseVec& v, std::size_t n) { return la::to_dense(v, n); }

// Sum of c * x (x) y over the terms of a sparse tensor, legs mapped by f and g.
template <class F, class G>
Vec map_legs(const SparseVec& t, std::size_t d, F f, G g) {
  Vec out(d * d);
  for (const auto& [ab, c] : t) {
    Vec x = f(ab / d), y = g(ab % d);
    for (std::size_t p = 0; p < d; ++p) {
      if (x[p].is_zero()) continue;
      for (std::size_t q = 0; q < d; ++q)
        if (!y[q].is_zero()) out[p * d + q] += c * x[p] * y[q];
    }
  }
  return out;
}

}  // namespace

Vec tensor_product_dense(const Algebra& a, std::size_t legs, std::span<const Scalar> x,
                         std::span<const Scalar> y) {
  std::size_t n = 1;
  for (std::size_t l = 0; l < legs; ++l) n *= a.dim();
  return la::to_dense(tensor_mul(a, legs, la::to_sparse(x), la::to_sparse(y)), n);
}

WeakHopf WeakHopf::make(Algebra alg, std::vector<SparseVec> delta, Vec eps, Mat S) {
  const std::size_t d = alg.dim();
  if (delta.size() != d) throw InvalidWeakHopf("comultiplication needs one image per basis element");
  for (const auto& v : delta)
    for (const auto& [i, c] : v)
      if (i >= d * d) throw InvalidWeakHopf("comultiplication index out of range");
  if (eps.size() != d) throw InvalidWeakHopf("counit has the wrong length");
  if (S.rows() != d || S.cols() != d) throw InvalidWeakHopf("antipode has the wrong shape");
  return WeakHopf{std::move(alg), std::move(delta), std::move(eps), std::move(S)};
}

Vec WeakHopf::coproduct(std::span<const Scalar> x) const {
  const std::size_t d = dim();
  Vec out(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    if (x[k].is_zero()) continue;
    for (const auto& [i, v] : delta[k]) out[i] += x[k] * v;
  }
  return out;
}

Mat WeakHopf::delta_matrix() const {
  const std::size_t d = dim();
  Mat m(d * d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [i, v] : delta[k]) m(i, k) = v;
  return m;
}

Vec WeakHopf::eps_t(std::span<const Scalar> h) const {
  const std::size_t d = dim();
  Vec d1 = coproduct(alg.one());
  Vec out(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Scalar& c = d1[a * d + b];
      if (c.is_zero()) continue;
      Scalar e = counit(alg.mul(alg.basis(a), h));
      if (!e.is_zero()) out[b] += c * e;
    }
  return out;
}

Vec WeakHopf::eps_s(std::span<const Scalar> h) const {
  const std::size_t d = dim();
  Vec d1 = coproduct(alg.one());
  Vec out(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Scalar& c = d1[a * d + b];
      if (c.is_zero()) continue;
      Scalar e = counit(alg.mul(h, alg.basis(b)));
      if (!e.is_zero()) out[a] += c * e;
    }
  return out;
}

bool operator==(const WeakHopf& a, const WeakHopf& b) {
  if (!(a.alg == b.alg) || a.eps != b.eps || !(a.S == b.S)) return false;
  return a.delta == b.delta;
}

Report verify_axioms(const WeakHopf& h) {
  Report r("weak-hopf-axioms");
  const Algebra& A = h.alg;
  const std::size_t d = h.dim();
  const std::size_t d2 = d * d;
  const auto& lab = A.labels();

  std::vector<Vec> Scol(d);
  for (std::size_t k = 0; k < d; ++k) Scol[k] = h.S.column(k);
  Mat eps2(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, v] : A.product(i, j)) eps2(i, j) += v * h.eps[k];

  // Coalgebra.
  r.expect("coassociativity", "coalgebra",
           as_failure(kernels::find_first_failure(d, [&](std::size_t k) -> std::optional<std::string> {
             Vec left(d2 * d), right(d2 * d);
             for (const auto& [ab, c] : h.delta[k]) {
               std::size_t a = ab / d, b = ab % d;
               for (const auto& [pq, c2] : h.delta[a]) left[pq * d + b] += c * c2;
               for (const auto& [pq, c2] : h.delta[b]) right[a * d2 + pq] += c * c2;
             }
             if (left == right) return std::nullopt;
             return "(Delta (x) id)Delta != (id (x) Delta)Delta on " + lab[k];
           })));
  r.expect("counit", "coalgebra",
           as_failure(kernels::find_first_failure(d, [&](std::size_t k) -> std::optional<std::string> {
             Vec left(d), right(d);
             for (const auto& [ab, c] : h.delta[k]) {
               left[ab % d] += c * h.eps[ab / d];
               right[ab / d] += c * h.eps[ab % d];
             }
             if (left != A.basis(k)) return "(eps (x) id)Delta != id on " + lab[k];
             if (right != A.basis(k)) return "(id (x) eps)Delta != id on " + lab[k];
             return std::nullopt;
           })));

  r.expect("comultiplication-multiplicative", "multiplicative-coproduct",
           as_failure(kernels::find_first_failure(d2, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t i = t / d, j = t % d;
             SparseVec lhs;
             {
               Vec v(d2);
               for (const auto& [k, c] : A.product(i, j))
                 for (const auto& [ab, c2] : h.delta[k]) v[ab] += c * c2;
               lhs = la::to_sparse(v);
             }
             if (lhs == tensor_mul(A, 2, h.delta[i], h.delta[j])) return std::nullopt;
             return "Delta(hg) != Delta(h)Delta(g) for h = " + lab[i] + ", g = " + lab[j];
           })));

  r.expect("counit-weak-multiplicativity", "weak-multiplicative-counit",
           as_failure(kernels::find_first_failure(d * d2, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t x = t / d2, g = (t / d) % d, f = t % d;
             Scalar lhs;
             for (const auto& [m, c] : A.product(x, g)) lhs += c * eps2(m, f);
             Scalar first, second;
             for (const auto& [ab, c] : h.delta[g]) {
               std::size_t a = ab / d, b = ab % d;
               first += c * eps2(x, a) * eps2(b, f);
               second += c * eps2(x, b) * eps2(a, f);
             }
             std::string where = " for (" + lab[x] + ", " + lab[g] + ", " + lab[f] + ")";
             if (lhs != first) return "eps(hgf) != eps(hg_1)eps(g_2f)" + where;
             if (lhs != second) return "eps(hgf) != eps(hg_2)eps(g_1f)" + where;
             return std::nullopt;
           })));

  {
    // With Delta(1) = c_ab e_a (x) e_b:
    // (Delta(1) (x) 1)(1 (x) Delta(1)) = c_ab c_pq e_a (x) e_b e_p (x) e_q and
    // (1 (x) Delta(1))(Delta(1) (x) 1) = c_ab c_pq e_a (x) e_p e_b (x) e_q.
    SparseVec d1 = la::to_sparse(h.coproduct(A.one()));
    Vec lr(d2 * d), rl(d2 * d), ddv(d2 * d);
    for (const auto& [ab, c] : d1)
      for (const auto& [pq, c2] : d1) {
        const std::size_t a = ab / d, b = ab % d, p = pq / d, q = pq % d;
        const Scalar cc = c * c2;
        for (const auto& [m, v] : A.product(b, p)) lr[(a * d + m) * d + q] += cc * v;
        for (const auto& [m, v] : A.product(p, b)) rl[(a * d + m) * d + q] += cc * v;
      }
    for (const auto& [ab, c] : d1)
      for (const auto& [pq, c2] : h.delta[ab / d]) ddv[pq * d + ab % d] += c * c2;
    bool f1 = lr == ddv;
    bool f2 = rl == ddv;
    std::optional<std::string> w;
    if (!f1) w = "(Delta (x) id)Delta(1) != (Delta(1) (x) 1)(1 (x) Delta(1))";
    else if (!f2) w = "(Delta (x) id)Delta(1) != (1 (x) Delta(1))(Delta(1) (x) 1)";
    r.expect("unit-weak-comultiplicativity", "weak-comultiplicative-unit", w);
  }

  std::vector<Vec> et(d), es(d), left_conv(d);
  kernels::parallel_for(d, [&](std::size_t k) {
    et[k] = h.eps_t(A.basis(k));
    es[k] = h.eps_s(A.basis(k));
    Vec v(d);
    for (const auto& [ab, c] : h.delta[k]) la::axpy(c, A.mul(Scol[ab / d], A.basis(ab % d)), v);
    left_conv[k] = std::move(v);
  });

  r.expect("antipode-target", "antipode-target-counital",
           as_failure(kernels::find_first_failure(d, [&](std::size_t k) -> std::optional<std::string> {
             Vec v(d);
             for (const auto& [ab, c] : h.delta[k]) la::axpy(c, A.mul_basis_left(ab / d, Scol[ab % d]), v);
             if (v == et[k]) return std::nullopt;
             return "h_1 S(h_2) != eps_t(h) for h = " + lab[k];
           })));
  r.expect("antipode-source", "antipode-source-counital",
           as_failure(kernels::find_first_failure(d, [&](std::size_t k) -> std::optional<std::string> {
             if (left_conv[k] == es[k]) return std::nullopt;
             return "S(h_1) h_2 != eps_s(h) for h = " + lab[k];
           })));
  r.expect("antipode-convolution", "antipode-convolution",
           as_failure(kernels::find_first_failure(d, [&](std::size_t k) -> std::optional<std::string> {
             Vec v(d);
             for (const auto& [ab, c] : h.delta[k]) la::axpy(c, A.mul(left_conv[ab / d], Scol[ab % d]), v);
             if (v == Scol[k]) return std::nullopt;
             return "S(h_1) h_2 S(h_3) != S(h) for h = " + lab[k] + ": got " + A.element_to_string(v) +
                    ", S(h) = " + A.element_to_string(Scol[k]);
           })));
  r.expect("antipode-anti-multiplicative", "antipode-anti-homomorphism",
           as_failure(kernels::find_first_failure(d2, [&](std::size_t t) -> std::optional<std::string> {
             std::size_t i = t / d, j = t % d;
             Vec lhs = h.S.apply(dense(A.product(i, j), d));
             if (lhs == A.mul(Scol[j], Scol[i])) return std::nullopt;
             return "S(hg) != S(g)S(h) for h = " + lab[i] + ", g = " + lab[j];
           })));
  r.expect("antipode-anti-comultiplicative", "antipode-anti-homomorphism",
           as_failure(kernels::find_first_failure(d, [&](std::size_t k) -> std::optional<std::string> {
             Vec lhs = h.coproduct(Scol[k]);
             Vec rhs(d2);
             for (const auto& [ab, c] : h.delta[k]) {
               const Vec& x = Scol[ab % d];
               const Vec& y = Scol[ab / d];
               for (std::size_t p = 0; p < d; ++p) {
                 if (x[p].is_zero()) continue;
                 for (std::size_t q = 0; q < d; ++q)
                   if (!y[q].is_zero()) rhs[p * d + q] += c * x[p] * y[q];
               }
             }
             if (lhs == rhs) return std::nullopt;
             return "Delta(S(h)) != S(h_2) (x) S(h_1) for h = " + lab[k];
           })));
  bool bij = la::rank(h.S) == d;
  r.add("antipode-bijective", "antipode-bijective", bij, bij ? "" : "S is singular");
  bool unique = antipode_equation_kernel(h, true).dim() == 0;
  r.add("antipode-unique", "antipode-uniqueness", unique,
        unique ? "" : "the antipode equations have more than one solution");
  return r;
}

Subspace antipode_equation_kernel(const WeakHopf& h, bool with_convolution) {
  const Algebra& A = h.alg;
  const std::size_t d = h.dim();
  const std::size_t nv = d * d;
  std::vector<Vec> es(d);
  for (std::size_t k = 0; k < d; ++k) es[k] = h.eps_s(A.basis(k));
  std::vector<std::vector<SparseVec>> blocks(d);
  kernels::parallel_for(d, [&](std::size_t k) {
    Mat target(d, nv), source(d, nv), conv(d, nv);
    for (std::size_t p = 0; p < d; ++p) conv(p, p * d + k) += 1;
    for (const auto& [ab, c] : h.delta[k]) {
      const std::size_t a = ab / d, b = ab % d;
      for (std::size_t i = 0; i < d; ++i) {
        // h_1 K(h_2): e_a e_i K_ib
        for (const auto& [p, v] : A.product(a, i)) target(p, i * d + b) += c * v;
        // K(h_1) h_2: e_i e_b K_ia
        for (const auto& [p, v] : A.product(i, b)) source(p, i * d + a) += c * v;
        if (with_convolution) {
          Vec m = A.mul(es[a], A.basis(i));
          for (std::size_t p = 0; p < d; ++p)
            if (!m[p].is_zero()) conv(p, i * d + b) -= c * m[p];
        }
      }
    }
    for (std::size_t p = 0; p < d; ++p) {
      for (const Mat* m : {&target, &source, with_convolution ? &conv : nullptr}) {
        if (!m) continue;
        auto row = la::to_sparse(m->row(p));
        if (!row.empty()) blocks[k].push_back(std::move(row));
      }
    }
  });
  std::vector<SparseVec> rows;
  for (auto& b : blocks)
    for (auto& row : b) rows.push_back(std::move(row));
  return la::kernel_sparse(rows, nv);
}

CounitalData counital(const WeakHopf& h) {
  const Algebra& A = h.alg;
  const std::size_t d = h.dim();
  CounitalData c;
  c.report = Report("counital");
  Report& r = c.report;
  c.eps_t = Mat(d, d);
  c.eps_s = Mat(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    c.eps_t.set_column(k, h.eps_t(A.basis(k)));
    c.eps_s.set_column(k, h.eps_s(A.basis(k)));
  }
  c.Ht = la::image(c.eps_t);
  c.Hs = la::image(c.eps_s);

  Vec d1 = h.coproduct(A.one());
  std::vector<Vec> right_legs, left_legs;
  for (std::size_t a = 0; a < d; ++a) {
    Vec rl(d), ll(d);
    for (std::size_t b = 0; b < d; ++b) {
      rl[b] = d1[a * d + b];
      ll[b] = d1[b * d + a];
    }
    right_legs.push_back(std::move(rl));
    left_legs.push_back(std::move(ll));
  }
  Subspace ht2 = Subspace::span(right_legs, d), hs2 = Subspace::span(left_legs, d);
  if (!(ht2.contains(c.Ht) && c.Ht.contains(ht2)))
    throw CounitalInconsistency("image of eps_t differs from the right legs of Delta(1)");
  if (!(hs2.contains(c.Hs) && c.Hs.contains(hs2)))
    throw CounitalInconsistency("image of eps_s differs from the left legs of Delta(1)");
  r.add("target-subalgebra-legs", "counital-subalgebras", true);
  r.add("source-subalgebra-legs", "counital-subalgebras", true);

  bool it = c.eps_t * c.eps_t == c.eps_t, is = c.eps_s * c.eps_s == c.eps_s;
  r.add("eps-t-idempotent", "counital-maps", it, it ? "" : "eps_t^2 != eps_t");
  r.add("eps-s-idempotent", "counital-maps", is, is ? "" : "eps_s^2 != eps_s");
  bool s1 = h.S * c.eps_t == c.eps_s * h.S, s2 = h.S * c.eps_s == c.eps_t * h.S;
  r.add("antipode-intertwines-target", "counital-maps", s1, s1 ? "" : "S eps_t != eps_s S");
  r.add("antipode-intertwines-source", "counital-maps", s2, s2 ? "" : "S eps_s != eps_t S");
  bool subt = A.is_subalgebra(c.Ht), subs = A.is_subalgebra(c.Hs);
  r.add("target-is-subalgebra", "counital-subalgebras", subt, subt ? "" : "Ht not closed");
  r.add("source-is-subalgebra", "counital-subalgebras", subs, subs ? "" : "Hs not closed");

  auto tb = c.Ht.basis(), sb = c.Hs.basis();
  std::optional<std::string> comm;
  for (std::size_t i = 0; i < tb.size() && !comm; ++i)
    for (std::size_t j = 0; j < sb.size() && !comm; ++j)
      if (!A.commute(tb[i], sb[j]))
        comm = A.element_to_string(tb[i]) + " and " + A.element_to_string(sb[j]) + " do not commute";
  r.expect("counital-subalgebras-commute", "counital-subalgebras", comm);

  std::vector<Vec> s_img;
  for (const auto& x : tb) s_img.push_back(h.S.apply(x));
  Subspace st = Subspace::span(s_img, d);
  std::optional<std::string> anti;
  if (st.dim() != tb.size() || !(st.contains(c.Hs) && c.Hs.contains(st)))
    anti = "S(Ht) != Hs";
  for (std::size_t i = 0; i < tb.size() && !anti; ++i)
    for (std::size_t j = 0; j < tb.size() && !anti; ++j)
      if (h.S.apply(A.mul(tb[i], tb[j])) != A.mul(s_img[j], s_img[i]))
        anti = "S is not anti-multiplicative on Ht";
  r.expect("antipode-target-to-source", "counital-subalgebras", anti);

  auto idempotent = [&](const Vec& e, const Subspace& sub) -> std::optional<std::string> {
    // e as a d x d coefficient matrix: legs are its columns and rows.
    for (std::size_t j = 0; j < d; ++j) {
      Vec col(d), row(d);
      for (std::size_t i = 0; i < d; ++i) {
        col[i] = e[i * d + j];
        row[i] = e[j * d + i];
      }
      if (!sub.contains(col) || !sub.contains(row)) return "separability idempotent leaves the subalgebra";
    }
    Vec mu(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!e[i * d + j].is_zero()) la::axpy(e[i * d + j], dense(A.product(i, j), d), mu);
    if (mu != A.one()) return "multiplication does not send the idempotent to 1";
    for (const auto& x : sub.basis()) {
      Vec l = tensor_product_dense(A, 2, kron_vec(x, A.one()), e);
      Vec rr = tensor_product_dense(A, 2, e, kron_vec(A.one(), x));
      if (l != rr) return "(x (x) 1)e != e(1 (x) x) for x = " + A.element_to_string(x);
    }
    return std::nullopt;
  };
  c.e_t = map_legs(la::to_sparse(d1), d, [&](std::size_t a) { return h.S.column(a); },
                   [&](std::size_t b) { return A.basis(b); });
  c.e_s = map_legs(la::to_sparse(d1), d, [&](std::size_t a) { return A.basis(a); },
                   [&](std::size_t b) { return h.S.column(b); });
  r.expect("target-separability-idempotent", "counital-separability", idempotent(c.e_t, c.Ht));
  r.expect("source-separability-idempotent", "counital-separability", idempotent(c.e_s, c.Hs));
  return c;
}

WeakHopf dual(const WeakHopf& h) {
  const Algebra& A = h.alg;
  const std::size_t d = h.dim();
  std::vector<SparseVec> products(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [ij, v] : h.delta[k]) products[ij].emplace_back(static_cast<std::uint32_t>(k), v);
  std::vector<SparseVec> delta(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, v] : A.product(i, j))
        delta[k].emplace_back(static_cast<std::uint32_t>(i * d + j), v);
  std::vector<std::string> labels;
  for (const auto& l : A.labels()) labels.push_back(l.rfind("p_", 0) == 0 ? l.substr(2) : "p_" + l);
  Algebra da = Algebra::from_products(d, std::move(products), h.eps, std::move(labels), A.modulus());
  return WeakHopf::make(std::move(da), std::move(delta), A.one(), h.S.transpose());
}

IntegralSpaces integrals(const WeakHopf& h) {
  const Algebra& A = h.alg;
  const std::size_t d = h.dim();
  std::vector<SparseVec> lrows, rrows;
  for (std::size_t k = 0; k < d; ++k) {
    Mat lm = A.left_matrix(A.basis(k)) - A.left_matrix(h.eps_t(A.basis(k)));
    Mat rm = A.right_matrix(A.basis(k)) - A.right_matrix(h.eps_s(A.basis(k)));
    for (std::size_t p = 0; p < d; ++p) {
      auto a = la::to_sparse(lm.row(p));
      if (!a.empty()) lrows.push_back(std::move(a));
      auto b = la::to_sparse(rm.row(p));
      if (!b.empty()) rrows.push_back(std::move(b));
    }
  }
  IntegralSpaces out;
  out.left = la::kernel_sparse(lrows, d);
  out.right = la::kernel_sparse(rrows, d);
  out.two_sided = out.left.intersect(out.right);
  if (out.left.dim() > 0) {
    Mat et(d, d);
    for (std::size_t k = 0; k < d; ++k) et.set_column(k, h.eps_t(A.basis(k)));
    Mat sys = et * out.left.basis_matrix();
    if (auto c = la::solve(sys, A.one())) out.normalized_left = out.left.combine(*c);
  }
  out.maschke_consistent = out.normalized_left.has_value() == separability_element(A).value.has_value();
  return out;
}

bool is_hopf(const WeakHopf& h) {
  const Algebra& A = h.alg;
  const std::size_t d = h.dim();
  bool unit = h.coproduct(A.one()) == kron_vec(A.one(), A.one());
  bool mult = true;
  for (std::size_t i = 0; i < d && mult; ++i)
    for (std::size_t j = 0; j < d && mult; ++j)
      mult = h.counit(dense(A.product(i, j), d)) == h.eps[i] * h.eps[j];
  Mat et(d, d);
  for (std::size_t k = 0; k < d; ++k) et.set_column(k, h.eps_t(A.basis(k)));
  bool trivial = la::rank(et) == 1;
  if (unit != mult || unit != trivial)
    throw EquivalenceViolation("Hopf criteria disagree: Delta(1) = 1 (x) 1 is " +
                               std::string(unit ? "true" : "false") + ", eps multiplicative is " +
                               (mult ? "true" : "false") + ", Ht = k1 is " +
                               (trivial ? "true" : "false"));
  return unit;
}

WeakHopf transport(const WeakHopf& h, const Mat& p) {
  auto q = la::inverse(p);
  if (!q) throw std::invalid_argument("transport: singular basis change");
  const std::size_t d = h.dim();
  std::vector<Vec> cols(d);
  for (std::size_t j = 0; j < d; ++j) cols[j] = p.column(j);
  std::vector<SparseVec> products(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      products[i * d + j] = la::to_sparse(q->apply(h.alg.mul(cols[i], cols[j])));
  Algebra alg = Algebra::from_products(d, std::move(products), q->apply(h.alg.one()), {}, h.alg.modulus());
  Mat qq = la::kron(*q, *q);
  std::vector<SparseVec> delta(d);
  Vec eps(d);
  for (std::size_t k = 0; k < d; ++k) {
    delta[k] = la::to_sparse(qq.apply(h.coproduct(cols[k])));
    eps[k] = h.counit(cols[k]);
  }
  return WeakHopf::make(std::move(alg), std::move(delta), std::move(eps), *q * h.S * p);
}

}  // namespace wha
