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


#include "wha/cli/spec_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wha::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) { throw SpecError(path + ": " + why); }

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

std::size_t index(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Scalar scalar(const json& j, const std::string& path, std::uint32_t modulus) {
  Scalar s;
  try {
    if (j.is_number_integer())
      s = Scalar(j.get<long long>());
    else if (j.is_string())
      s = Scalar::parse(j.get<std::string>());
    else
      fail(path, "expected an integer or a \"p/q\" string");
    return modulus ? s.in_field(modulus) : s;
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

json scalar_json(const Scalar& s) {
  mpq_class q = s.to_mpq();
  if (s.modulus() == 0 && q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return s.to_string();
}

Vec vector(const json& j, std::size_t n, const std::string& path, std::uint32_t modulus) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scalar(j[i], path + "[" + std::to_string(i) + "]", modulus);
  return v;
}

json vector_json(std::span<const Scalar> v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(scalar_json(s));
  return out;
}

Mat matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& path, std::uint32_t modulus) {
  if (!j.is_array() || j.size() != rows)
    fail(path, "expected " + std::to_string(rows) + " rows of length " + std::to_string(cols));
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Vec row = vector(j[r], cols, path + "[" + std::to_string(r) + "]", modulus);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

json matrix_json(const Mat& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Algebra algebra(const json& j, const std::string& path, std::uint32_t modulus, bool verified) {
  std::size_t dim = index(field(j, "dim", path), path + ".dim");
  if (dim == 0) fail(path + ".dim", "must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& l = j["labels"];
    if (!l.is_array() || l.size() != dim) fail(path + ".labels", "expected " + std::to_string(dim) + " names");
    for (std::size_t i = 0; i < dim; ++i) labels.push_back(text(l[i], path + ".labels[" + std::to_string(i) + "]"));
  }
  Vec unit = vector(field(j, "unit", path), dim, path + ".unit", modulus);
  const json& prods = field(j, "products", path);
  if (!prods.is_array()) fail(path + ".products", "expected an array");
  std::vector<StructureEntry> entries;
  for (std::size_t t = 0; t < prods.size(); ++t) {
    std::string p = path + ".products[" + std::to_string(t) + "]";
    const json& e = prods[t];
    if (!e.is_array() || e.size() != 4) fail(p, "expected [i, j, k, coefficient]");
    std::size_t i = index(e[0], p + "[0]"), jj = index(e[1], p + "[1]"), k = index(e[2], p + "[2]");
    if (i >= dim || jj >= dim || k >= dim) fail(p, "basis index out of range");
    entries.push_back({i, jj, k, scalar(e[3], p + "[3]", modulus)});
  }
  if (verified) {
    try {
      return Algebra::make(dim, entries, unit, labels, modulus);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  std::vector<SparseVec> products(dim * dim);
  std::vector<Vec> dense(dim * dim, Vec(dim));
  for (const auto& e : entries) dense[e.i * dim + e.j][e.k] += e.value;
  for (std::size_t t = 0; t < dim * dim; ++t) products[t] = la::to_sparse(dense[t]);
  return Algebra::from_products(dim, std::move(products), unit, labels, modulus);
}

json algebra_json(const Algebra& a) {
  json prods = json::array();
  for (const auto& e : a.structure()) prods.push_back({e.i, e.j, e.k, scalar_json(e.value)});
  return {{"dim", a.dim()}, {"labels", a.labels()}, {"unit", vector_json(a.one())}, {"products", prods}};
}

std::string field_name(std::uint32_t modulus) {
  return modulus ? "prime:" + std::to_string(modulus) : "rational";
}

std::uint32_t parse_field(const std::string& f) {
  if (f == "rational") return 0;
  if (f.rfind("prime:", 0) == 0) {
    try {
      long long p = std::stoll(f.substr(6));
      if (p < 2 || p > 0x7fffffff) throw std::out_of_range("prime");
      for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) fail("field", f.substr(6) + " is not prime");
      return static_cast<std::uint32_t>(p);
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception&) {
      fail("field", "malformed prime in '" + f + "'");
    }
  }
  fail("field", "expected \"rational\" or \"prime:p\", got '" + f + "'");
}

WeakHopf weak_hopf(const json& j, const std::string& path, std::uint32_t modulus) {
  Algebra a = algebra(field(j, "algebra", path), path + ".algebra", modulus, false);
  const std::size_t d = a.dim();
  const json& co = field(j, "coproduct", path);
  if (!co.is_array()) fail(path + ".coproduct", "expected an array");
  std::vector<Vec> dense(d, Vec(d * d));
  for (std::size_t t = 0; t < co.size(); ++t) {
    std::string p = path + ".coproduct[" + std::to_string(t) + "]";
    const json& e = co[t];
    if (!e.is_array() || e.size() != 4) fail(p, "expected [k, i, j, coefficient]");
    std::size_t k = index(e[0], p + "[0]"), i = index(e[1], p + "[1]"), jj = index(e[2], p + "[2]");
    if (k >= d || i >= d || jj >= d) fail(p, "basis index out of range");
    dense[k][i * d + jj] += scalar(e[3], p + "[3]", modulus);
  }
  std::vector<SparseVec> delta;
  for (const auto& v : dense) delta.push_back(la::to_sparse(v));
  Vec eps = vector(field(j, "counit", path), d, path + ".counit", modulus);
  Mat S = matrix(field(j, "antipode", path), d, d, path + ".antipode", modulus);
  try {
    return WeakHopf::make(std::move(a), std::move(delta), std::move(eps), std::move(S));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

json weak_hopf_json(const WeakHopf& h) {
  const std::size_t d = h.dim();
  json co = json::array();
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [ij, c] : h.delta[k]) co.push_back({k, ij / d, ij % d, scalar_json(c)});
  return {{"algebra", algebra_json(h.alg)}, {"coproduct", co}, {"counit", vector_json(h.eps)},
          {"antipode", matrix_json(h.S)}};
}

Groupoid groupoid(const json& j, const std::string& path) {
  const json& objs = field(j, "objects", path);
  if (!objs.is_array()) fail(path + ".objects", "expected an array");
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < objs.size(); ++i)
    objects.push_back(text(objs[i], path + ".objects[" + std::to_string(i) + "]"));
  auto object = [&](const json& v, const std::string& p) {
    std::string s = text(v, p);
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == s) return i;
    fail(p, "unknown object '" + s + "'");
  };
  const json& ms = field(j, "morphisms", path);
  if (!ms.is_array()) fail(path + ".morphisms", "expected an array");
  std::vector<Morphism> morphisms;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string p = path + ".morphisms[" + std::to_string(i) + "]";
    morphisms.push_back(Morphism{text(field(ms[i], "name", p), p + ".name"),
                                 object(field(ms[i], "source", p), p + ".source"),
                                 object(field(ms[i], "target", p), p + ".target")});
  }
  auto morphism = [&](const json& v, const std::string& p) {
    std::string s = text(v, p);
    for (std::size_t i = 0; i < morphisms.size(); ++i)
      if (morphisms[i].name == s) return i;
    fail(p, "unknown morphism '" + s + "'");
  };
  const json& cs = field(j, "compositions", path);
  if (!cs.is_array()) fail(path + ".compositions", "expected an array");
  std::vector<Groupoid::Composition> table;
  for (std::size_t t = 0; t < cs.size(); ++t) {
    std::string p = path + ".compositions[" + std::to_string(t) + "]";
    if (!cs[t].is_array() || cs[t].size() != 3) fail(p, "expected [g, h, g o h]");
    table.push_back({morphism(cs[t][0], p + "[0]"), morphism(cs[t][1], p + "[1]"), morphism(cs[t][2], p + "[2]")});
  }
  try {
    return Groupoid::make(std::move(objects), std::move(morphisms), table);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

json groupoid_json(const Groupoid& g) {
  json ms = json::array(), cs = json::array();
  for (const auto& m : g.morphisms())
    ms.push_back({{"name", m.name}, {"source", g.objects()[m.source]}, {"target", g.objects()[m.target]}});
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (auto c = g.compose(a, b))
        cs.push_back({g.morphisms()[a].name, g.morphisms()[b].name, g.morphisms()[*c].name});
  return {{"objects", g.objects()}, {"morphisms", ms}, {"compositions", cs}};
}

MarkovExample markov(const json& j, const std::string& name, const std::string& path, std::uint32_t modulus) {
  Algebra small = algebra(field(j, "small", path), path + ".small", modulus, true);
  Algebra big = algebra(field(j, "big", path), path + ".big", modulus, true);
  Mat embed = matrix(field(j, "embedding", path), big.dim(), small.dim(), path + ".embedding", modulus);
  Mat map = matrix(field(j, "expectation", path), small.dim(), big.dim(), path + ".expectation", modulus);
  Vec trace = vector(field(j, "trace", path), small.dim(), path + ".trace", modulus);
  try {
    auto e = CondExpectation::make(Inclusion::make(small, big, embed), map);
    return make_markov_example(name, std::move(e), std::move(trace));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

json markov_json(const MarkovExample& ex) {
  const auto& e = ex.expectation;
  return {{"small", algebra_json(e.small())}, {"big", algebra_json(e.big())}, {"embedding", matrix_json(e.incl.embed)},
          {"expectation", matrix_json(e.map)}, {"trace", vector_json(ex.trace)}};
}

bool same_groupoid(const Groupoid& a, const Groupoid& b) {
  if (a.objects() != b.objects() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a.morphisms()[i], &y = b.morphisms()[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a.compose(i, k) != b.compose(i, k)) return false;
  }
  return true;
}

}  // namespace

std::string_view kind_name(SpecKind k) {
  switch (k) {
    case SpecKind::algebra: return "algebra";
    case SpecKind::weak_hopf: return "weak-hopf";
    case SpecKind::groupoid: return "groupoid";
    case SpecKind::markov_extension: return "markov-extension";
  }
  return "";
}

SpecFile parse_spec(std::string_view input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
  SpecFile s;
  std::string kind = text(field(j, "kind", "file"), "kind");
  s.name = j.contains("name") ? text(j["name"], "name") : "unnamed";
  s.modulus = j.contains("field") ? parse_field(text(j["field"], "field")) : 0;
  const json& payload = field(j, "payload", "file");
  if (kind == "algebra") {
    s.kind = SpecKind::algebra;
    s.algebra = algebra(payload, "payload", s.modulus, false);
  } else if (kind == "weak-hopf") {
    s.kind = SpecKind::weak_hopf;
    s.whopf = weak_hopf(payload, "payload", s.modulus);
  } else if (kind == "groupoid") {
    s.kind = SpecKind::groupoid;
    s.groupoid = groupoid(payload, "payload");
  } else if (kind == "markov-extension") {
    s.kind = SpecKind::markov_extension;
    s.markov = markov(payload, s.name, "payload", s.modulus);
  } else {
    fail("kind", "unknown kind '" + kind + "'");
  }
  return s;
}

SpecFile read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

std::string write_spec(const SpecFile& s) {
  json payload;
  switch (s.kind) {
    case SpecKind::algebra: payload = algebra_json(*s.algebra); break;
    case SpecKind::weak_hopf: payload = weak_hopf_json(*s.whopf); break;
    case SpecKind::groupoid: payload = groupoid_json(*s.groupoid); break;
    case SpecKind::markov_extension: payload = markov_json(*s.markov); break;
  }
  json j = {{"kind", kind_name(s.kind)}, {"name", s.name}, {"field", field_name(s.modulus)}, {"payload", payload}};
  return j.dump(2) + "\n";
}

SpecFile algebra_spec(std::string name, const Algebra& a) {
  SpecFile s{SpecKind::algebra, std::move(name), a.modulus(), a, {}, {}, {}};
  return s;
}

SpecFile weak_hopf_spec(std::string name, const WeakHopf& h) {
  SpecFile s{SpecKind::weak_hopf, std::move(name), h.alg.modulus(), {}, h, {}, {}};
  return s;
}

SpecFile groupoid_spec(std::string name, const Groupoid& g, std::uint32_t modulus) {
  SpecFile s{SpecKind::groupoid, std::move(name), modulus, {}, {}, g, {}};
  return s;
}

SpecFile markov_spec(const MarkovExample& ex) {
  SpecFile s{SpecKind::markov_extension, ex.name, ex.expectation.big().modulus(), {}, {}, {}, ex};
  return s;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out{"trivial", "z2", "z3", "pair2", "pair3", "z2+pair2"};
  for (const auto& n : markov_example_names()) out.push_back(n);
  return out;
}

SpecFile builtin_spec(std::string_view name) {
  if (name == "trivial") return groupoid_spec("trivial", trivial_groupoid());
  if (name == "z2") return groupoid_spec("z2", cyclic_group(2));
  if (name == "z3") return groupoid_spec("z3", cyclic_group(3));
  if (name == "pair2") return groupoid_spec("pair2", pair_groupoid(2));
  if (name == "pair3") return groupoid_spec("pair3", pair_groupoid(3));
  if (name == "z2+pair2") return groupoid_spec("z2+pair2", disjoint_union(cyclic_group(2), pair_groupoid(2)));
  for (const auto& n : markov_example_names())
    if (n == name) return markov_spec(markov_example(n));
  throw SpecError("unknown example '" + std::string(name) + "'");
}

bool same_structure(const SpecFile& a, const SpecFile& b) {
  if (a.kind != b.kind || a.modulus != b.modulus || a.name != b.name) return false;
  switch (a.kind) {
    case SpecKind::algebra: return *a.algebra == *b.algebra;
    case SpecKind::weak_hopf: return *a.whopf == *b.whopf;
    case SpecKind::groupoid: return same_groupoid(*a.groupoid, *b.groupoid);
    case SpecKind::markov_extension: {
      const auto &x = a.markov->expectation, &y = b.markov->expectation;
      return x.small() == y.small() && x.big() == y.big() && x.incl.embed == y.incl.embed && x.map == y.map &&
             a.markov->trace == b.markov->trace;
    }
  }
  return false;
}

}  // namespace wha::cli
