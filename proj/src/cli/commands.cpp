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


#include "wha/cli/commands.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>

namespace wha::cli {

namespace {

void require_kind(const SpecFile& s, std::initializer_list<SpecKind> kinds, const std::string& command) {
  if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end())
    throw SpecError(command + " does not accept files of kind '" + std::string(kind_name(s.kind)) + "'");
}

WeakHopf hopf_of(const SpecFile& s) {
  if (s.kind == SpecKind::groupoid) return groupoid_algebra(*s.groupoid, s.modulus);
  return *s.whopf;
}

void whopf_checks(const WeakHopf& h, Report& r, const std::string& prefix) {
  Report ax = verify_axioms(h);
  r.append(ax, prefix);
  try {
    r.append(counital(h).report, prefix + "/counital");
  } catch (const CounitalInconsistency& e) {
    r.add(prefix + "/counital", "counital", false, e.what());
  }
  if (!ax.all_passed()) return;
  auto in = integrals(h);
  r.add(prefix + "/normalized-left-integral", "integrals", in.maschke_consistent,
        in.maschke_consistent ? "" : "normalized left integral does not match separability");
}

}  // namespace

Report verify_wha(const SpecFile& s) {
  require_kind(s, {SpecKind::weak_hopf, SpecKind::groupoid}, "verify-wha");
  Report r("verify-wha:" + s.name);
  WeakHopf h = hopf_of(s);
  whopf_checks(h, r, "H");
  WeakHopf d = dual(h);
  bool inv = dual(d) == h;
  r.add("dual-involution", "duality", inv, inv ? "" : "dual(dual(H)) != H");
  whopf_checks(d, r, "H*");
  if (s.kind == SpecKind::groupoid) r.append(groupoid_integrals(*s.groupoid, s.modulus).report, "integrals");
  return r;
}

Report groupoid_report(const SpecFile& s, bool with_dual, bool with_integrals) {
  require_kind(s, {SpecKind::groupoid}, "groupoid");
  Report r("groupoid:" + s.name);
  const Groupoid& g = *s.groupoid;
  WeakHopf h = groupoid_algebra(g, s.modulus);
  whopf_checks(h, r, "kG");
  if (with_dual) {
    try {
      WeakHopf d = groupoid_dual(g, s.modulus);
      r.add("dual-formulas", "groupoid-dual", true);
      whopf_checks(d, r, "kG*");
      bool inv = dual(d) == h;
      r.add("dual-involution", "duality", inv, inv ? "" : "dual((kG)*) != kG");
    } catch (const std::logic_error& e) {
      r.add("dual-formulas", "groupoid-dual", false, e.what());
    }
  }
  if (with_integrals) r.append(groupoid_integrals(g, s.modulus).report, "integrals");
  return r;
}

Report algebra_report(const SpecFile& s) {
  require_kind(s, {SpecKind::algebra}, "report");
  Report r("algebra:" + s.name);
  const Algebra& a = *s.algebra;
  auto assoc = a.associativity_failure();
  r.add("associative", "algebra", !assoc,
        assoc ? "basis triple (" + std::to_string(std::get<0>(*assoc)) + ", " + std::to_string(std::get<1>(*assoc)) +
                    ", " + std::to_string(std::get<2>(*assoc)) + ")"
              : "");
  auto unit = a.unit_failure();
  r.add("unital", "algebra", !unit, unit ? "unit fails on e_" + std::to_string(*unit) : "");
  if (!assoc && !unit) {
    auto k = kanzaki_element(a);
    r.add("kanzaki-separable", "separability", bool(k), k ? "" : k.failure);
  }
  return r;
}

PipelineResult tower_report(const SpecFile& s, const PipelineOptions& opt) {
  require_kind(s, {SpecKind::markov_extension}, "tower");
  return run_tower_pipeline(*s.markov, opt);
}

namespace {

int emit(const Report& r, const std::string& format, std::ostream& out, const std::string& trailer = {}) {
  if (format == "machine") {
    out << r.machine();
  } else {
    out << r.text();
    if (!trailer.empty()) out << trailer << "\n";
  }
  return r.all_passed() ? kPass : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of weak Hopf algebras and depth-2 Markov towers", "wha"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));

  std::string file;
  auto* verify = app.add_subcommand("verify-wha", "Verify a weak Hopf algebra or groupoid file");
  verify->add_option("file", file, "Input file")->required();

  PipelineOptions popt;
  std::size_t fn = 0;
  auto* tower = app.add_subcommand("tower", "Build and verify the tower of a Markov extension");
  tower->add_option("file", file, "Input file")->required();
  tower->add_option("--depth", popt.depth, "Tower depth")->check(CLI::Range(1, 9));
  tower->add_flag("--derive", popt.derive, "Run depth 2, the derived weak Hopf algebras and smash products");
  auto* fn_opt = tower->add_option("--appendix-fn", fn, "Verify composite idempotents f_0..f_n")
                     ->check(CLI::Range(0, 4));
  tower->add_option("--max-dim", popt.max_dim, "Dimension budget for the composite idempotents");

  bool with_dual = false, with_integrals = false;
  auto* gcmd = app.add_subcommand("groupoid", "Verify a groupoid algebra");
  gcmd->add_option("file", file, "Input file")->required();
  gcmd->add_flag("--dual", with_dual, "Also verify the dual (kG)*");
  gcmd->add_flag("--integrals", with_integrals, "Also compare integral spaces");

  auto* report = app.add_subcommand("report", "Run the default verification for any input file");
  report->add_option("file", file, "Input file")->required();

  std::string name, as = "spec", output;
  bool list = false;
  auto* exp = app.add_subcommand("export-example", "Write a built-in example as an input file");
  exp->add_option("name", name, "Example name");
  exp->add_flag("--list", list, "List the built-in examples");
  exp->add_option("--as", as, "Export a groupoid as its algebra or dual")
      ->check(CLI::IsMember({"spec", "weak-hopf", "dual"}));
  exp->add_option("--output,-o", output, "Output file (stdout when omitted)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*exp) {
      if (list) {
        for (const auto& n : builtin_names()) out << n << "\n";
        return kPass;
      }
      if (name.empty()) throw SpecError("export-example needs a name (see --list)");
      SpecFile s = builtin_spec(name);
      if (as != "spec") {
        require_kind(s, {SpecKind::groupoid}, "export-example --as " + as);
        WeakHopf h = groupoid_algebra(*s.groupoid, s.modulus);
        s = weak_hopf_spec(as == "dual" ? name + "-dual" : name, as == "dual" ? dual(h) : h);
      }
      std::string textout = write_spec(s);
      if (output.empty()) {
        out << textout;
      } else {
        std::ofstream f(output);
        if (!f) throw SpecError(output + ": cannot write file");
        f << textout;
      }
      return kPass;
    }

    SpecFile s = read_spec(file);
    if (*verify) return emit(verify_wha(s), format, out);
    if (*gcmd) return emit(groupoid_report(s, with_dual, with_integrals), format, out);
    if (*tower || (*report && s.kind == SpecKind::markov_extension)) {
      if (*report) popt.derive = true;
      if (*fn_opt) popt.appendix_fn = fn;
      PipelineResult res = tower_report(s, popt);
      const StageResult* bad = res.failed_stage();
      return emit(res.combined("tower:" + s.name), format, out, bad ? "stopped at stage: " + bad->name : "");
    }
    if (s.kind == SpecKind::algebra) return emit(algebra_report(s), format, out);
    return emit(verify_wha(s), format, out);
  } catch (const SpecError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace wha::cli
