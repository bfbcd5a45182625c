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

#include "wha/groupoid/groupoid.hpp"

#include <map>

namespace wha {

Groupoid Groupoid::make(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                        const std::vector<Composition>& table) {
  Groupoid G;
  G.objects_ = std::move(objects);
  G.morphisms_ = std::move(morphisms);
  const std::size_t n = G.morphisms_.size(), no = G.objects_.size();
  if (no == 0) throw InvalidGroupoid("a groupoid needs at least one object");
  for (const auto& m : G.morphisms_)
    if (m.source >= no || m.target >= no) throw InvalidGroupoid("morphism " + m.name + " has an unknown endpoint");
  G.table_.assign(n * n, -1);
  for (const auto& c : table) {
    if (c.g >= n || c.h >= n || c.gh >= n) throw InvalidGroupoid("composition entry out of range");
    const auto &g = G.morphisms_[c.g], &h = G.morphisms_[c.h], &gh = G.morphisms_[c.gh];
    if (g.source != h.target)
      throw InvalidGroupoid(g.name + " o " + h.name + " is listed but not composable");
    if (gh.source != h.source || gh.target != g.target)
      throw InvalidGroupoid(g.name + " o " + h.name + " = " + gh.name + " has the wrong endpoints");
    auto& slot = G.table_[c.g * n + c.h];
    if (slot >= 0 && static_cast<std::size_t>(slot) != c.gh)
      throw InvalidGroupoid(g.name + " o " + h.name + " is listed twice");
    slot = static_cast<std::int64_t>(c.gh);
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (G.morphisms_[g].source == G.morphisms_[h].target && G.table_[g * n + h] < 0)
        throw InvalidGroupoid(G.morphisms_[g].name + " o " + G.morphisms_[h].name + " is missing");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        auto gh = G.compose(g, h), hk = G.compose(h, k);
        if (!gh || !hk) continue;
        if (G.compose(*gh, k) != G.compose(g, *hk))
          throw InvalidGroupoid("composition is not associative at (" + G.morphisms_[g].name + ", " +
                                G.morphisms_[h].name + ", " + G.morphisms_[k].name + ")");
      }
  G.identities_.assign(no, n);
  for (std::size_t x = 0; x < no; ++x) {
    for (std::size_t e = 0; e < n && G.identities_[x] == n; ++e) {
      if (G.morphisms_[e].source != x || G.morphisms_[e].target != x) continue;
      bool neutral = true;
      for (std::size_t g = 0; g < n && neutral; ++g) {
        if (G.morphisms_[g].source == x && G.compose(g, e) != g) neutral = false;
        if (G.morphisms_[g].target == x && G.compose(e, g) != g) neutral = false;
      }
      if (neutral) G.identities_[x] = e;
    }
    if (G.identities_[x] == n) throw InvalidGroupoid("object " + G.objects_[x] + " has no identity");
  }
  G.inverses_.assign(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    const auto& m = G.morphisms_[g];
    for (std::size_t h = 0; h < n && G.inverses_[g] == n; ++h)
      if (G.compose(h, g) == G.identities_[m.source] && G.compose(g, h) == G.identities_[m.target])
        G.inverses_[g] = h;
    if (G.inverses_[g] == n) throw InvalidGroupoid("morphism " + m.name + " is not invertible");
  }
  return G;
}

std::optional<std::size_t> Groupoid::compose(std::size_t g, std::size_t h) const {
  auto v = table_[g * morphisms_.size() + h];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

bool Groupoid::is_identity(std::size_t g) const {
  return identities_[morphisms_[g].source] == g;
}

std::size_t Groupoid::find(const std::string& name) const {
  for (std::size_t i = 0; i < morphisms_.size(); ++i)
    if (morphisms_[i].name == name) return i;
  throw InvalidGroupoid("unknown morphism " + name);
}

Groupoid trivial_groupoid() { return cyclic_group(1); }

Groupoid cyclic_group(std::size_t n) {
  std::vector<Morphism> ms;
  std::vector<Groupoid::Composition> table;
  for (std::size_t i = 0; i < n; ++i) ms.push_back({"g" + std::to_string(i), 0, 0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table.push_back({i, j, (i + j) % n});
  return Groupoid::make({"*"}, std::move(ms), table);
}

Groupoid pair_groupoid(std::size_t n) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::string(1, static_cast<char>('X' + i % 3)) +
                                                     (i >= 3 ? std::to_string(i / 3) : ""));
  // Morphism t*n+s goes from s to t.
  std::vector<Morphism> ms;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s) ms.push_back({objs[t] + "<-" + objs[s], s, t});
  std::vector<Groupoid::Composition> table;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t s = 0; s < n; ++s) table.push_back({t * n + m, m * n + s, t * n + s});
  return Groupoid::make(std::move(objs), std::move(ms), table);
}

Groupoid disjoint_union(const Groupoid& a, const Groupoid& b) {
  std::vector<std::string> objs = a.objects();
  for (const auto& o : b.objects()) objs.push_back(o + "'");
  std::vector<Morphism> ms = a.morphisms();
  const std::size_t na = a.size(), oa = a.object_count();
  for (const auto& m : b.morphisms()) ms.push_back({m.name + "'", m.source + oa, m.target + oa});
  std::vector<Groupoid::Composition> table;
  for (std::size_t g = 0; g < na; ++g)
    for (std::size_t h = 0; h < na; ++h)
      if (auto c = a.compose(g, h)) table.push_back({g, h, *c});
  for (std::size_t g = 0; g < b.size(); ++g)
    for (std::size_t h = 0; h < b.size(); ++h)
      if (auto c = b.compose(g, h)) table.push_back({g + na, h + na, *c + na});
  return Groupoid::make(std::move(objs), std::move(ms), table);
}

namespace {

std::vector<std::string> names(const Groupoid& g, const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& m : g.morphisms()) out.push_back(prefix + m.name);
  return out;
}

Scalar one(std::uint32_t modulus) { return modulus ? Scalar::residue(1, modulus) : Scalar(1); }

}  // namespace

WeakHopf groupoid_algebra(const Groupoid& G, std::uint32_t modulus) {
  const std::size_t n = G.size();
  const Scalar u = one(modulus);
  std::vector<SparseVec> products(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (auto c = G.compose(g, h)) products[g * n + h] = {{static_cast<std::uint32_t>(*c), u}};
  Vec unit(n, modulus ? Scalar::residue(0, modulus) : Scalar(0));
  for (std::size_t x = 0; x < G.object_count(); ++x) unit[G.identity(x)] = u;
  Algebra alg = Algebra::from_products(n, std::move(products), unit, names(G, ""), modulus);
  std::vector<SparseVec> delta(n);
  Mat S(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    delta[g] = {{static_cast<std::uint32_t>(g * n + g), u}};
    S(G.inverse(g), g) = u;
  }
  return WeakHopf::make(std::move(alg), std::move(delta), Vec(n, u), std::move(S));
}

WeakHopf groupoid_dual(const Groupoid& G, std::uint32_t modulus) {
  const std::size_t n = G.size();
  const Scalar u = one(modulus);
  std::vector<SparseVec> products(n * n);
  for (std::size_t g = 0; g < n; ++g) products[g * n + g] = {{static_cast<std::uint32_t>(g), u}};
  std::vector<SparseVec> delta(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (auto c = G.compose(a, b)) delta[*c].emplace_back(static_cast<std::uint32_t>(a * n + b), u);
  Vec eps(n), unit(n, u);
  Mat S(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    if (G.is_identity(g)) eps[g] = u;
    S(G.inverse(g), g) = u;
  }
  Algebra alg = Algebra::from_products(n, std::move(products), unit, names(G, "p_"), modulus);
  WeakHopf out = WeakHopf::make(std::move(alg), std::move(delta), std::move(eps), std::move(S));
  if (!(out == dual(groupoid_algebra(G, modulus))))
    throw std::logic_error("explicit (kG)* differs from the transposed structure of kG");
  return out;
}

GroupoidIntegrals groupoid_integrals(const Groupoid& G, std::uint32_t modulus) {
  const std::size_t n = G.size();
  const Scalar u = one(modulus);
  GroupoidIntegrals out;
  out.report = Report("groupoid-integrals");
  for (std::size_t x = 0; x < G.object_count(); ++x) {
    Vec l(n), r(n), p(n);
    for (std::size_t g = 0; g < n; ++g) {
      if (G.morphisms()[g].source == x) l[g] = u;
      if (G.morphisms()[g].target == x) r[g] = u;
    }
    p[G.identity(x)] = u;
    out.left.push_back(std::move(l));
    out.right.push_back(std::move(r));
    out.dual.push_back(std::move(p));
  }
  auto same = [](const Subspace& a, const Subspace& b) { return a.contains(b) && b.contains(a); };
  auto add = [&](const char* name, const char* anchor, bool ok, const char* why) {
    out.report.add(name, anchor, ok, ok ? "" : why);
  };
  IntegralSpaces kg = integrals(groupoid_algebra(G, modulus));
  IntegralSpaces dg = integrals(groupoid_dual(G, modulus));
  add("left-integrals-span", "groupoid-integrals",
                 same(kg.left, Subspace::span(out.left, n)), "left integrals differ from span of l_e");
  add("right-integrals-span", "groupoid-integrals",
                 same(kg.right, Subspace::span(out.right, n)), "right integrals differ from span of r_e");
  Subspace pe = Subspace::span(out.dual, n);
  add("dual-left-integrals", "groupoid-dual-integrals", same(dg.left, pe),
                 "left integrals of the dual differ from span of p_e");
  add("dual-right-integrals", "groupoid-dual-integrals", same(dg.right, pe),
                 "right integrals of the dual differ from span of p_e");
  add("left-integral-dimension", "groupoid-integrals",
                 kg.left.dim() == G.object_count(), "dimension differs from the number of objects");
  return out;
}

}  // namespace wha
