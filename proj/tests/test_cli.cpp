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


#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wha/cli/commands.hpp"
#include "wha/cli/spec_file.hpp"

using namespace wha;
using namespace wha::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("wha-test-" + name + ".json");
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_CASE("every built-in example survives a round trip") {
  for (const auto& name : builtin_names()) {
    SpecFile s = builtin_spec(name);
    SpecFile back = parse_spec(write_spec(s));
    INFO(name);
    CHECK(back.kind == s.kind);
    CHECK(back.name == s.name);
    CHECK(same_structure(s, back));
  }
  WeakHopf h = groupoid_algebra(pair_groupoid(2));
  SpecFile w = weak_hopf_spec("pair2-algebra", h);
  SpecFile wb = parse_spec(write_spec(w));
  REQUIRE(wb.whopf.has_value());
  CHECK(*wb.whopf == h);
}

TEST_CASE("spec parse errors name the offending field") {
  CHECK_THROWS_AS(parse_spec("{"), SpecError);
  CHECK_THROWS_AS(parse_spec(R"({"kind":"algebra","name":"x","field":"rational"})"), SpecError);
  CHECK_THROWS_AS(parse_spec(R"({"kind":"mystery","name":"x","field":"rational","payload":{}})"), SpecError);
  try {
    parse_spec(R"({"kind":"algebra","name":"x","field":"prime:4","payload":{}})");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("field") != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  std::string pair2 = temp_file("pair2", write_spec(builtin_spec("pair2")));
  CHECK(run_cli({"verify-wha", pair2}).code == kPass);
  CHECK(run_cli({"groupoid", pair2, "--dual", "--integrals"}).code == kPass);

  std::string q = temp_file("q-in-q2", write_spec(builtin_spec("q-in-q2")));
  Run ok = run_cli({"tower", q, "--derive", "--appendix-fn", "1"});
  CHECK(ok.code == kPass);

  std::string s3 = temp_file("s2-in-s3", write_spec(builtin_spec("s2-in-s3")));
  Run bad = run_cli({"tower", s3, "--derive"});
  CHECK(bad.code == kVerificationFailure);
  CHECK(bad.out.find("stopped at stage: depth2") != std::string::npos);

  CHECK(run_cli({"verify-wha", "/nonexistent/wha.json"}).code == kInputError);
  CHECK(run_cli({"no-such-command"}).code == kInputError);
  CHECK(run_cli({"verify-wha", temp_file("garbage", "not json")}).code == kInputError);
  CHECK(run_cli({"export-example", "no-such-example"}).code == kInputError);
}

TEST_CASE("a corrupted antipode is reported") {
  WeakHopf h = groupoid_algebra(pair_groupoid(2));
  h.S = Mat::identity(h.dim());
  std::string path = temp_file("bad-antipode", write_spec(weak_hopf_spec("bad-antipode", h)));
  Run r = run_cli({"--format", "machine", "verify-wha", path});
  CHECK(r.code == kVerificationFailure);
  CHECK(r.out.find(R"("name":"H/antipode-convolution","anchor":"antipode-convolution","pass":false)") !=
        std::string::npos);
}

TEST_CASE("output is deterministic") {
  std::string q = temp_file("q2-in-m2", write_spec(builtin_spec("q2-in-m2")));
  Run a = run_cli({"--format", "machine", "tower", q, "--derive"});
  Run b = run_cli({"--format", "machine", "tower", q, "--derive"});
  CHECK(a.code == kPass);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("export-example lists and writes examples") {
  Run list = run_cli({"export-example", "--list"});
  CHECK(list.code == kPass);
  CHECK(list.out.find("q-in-q2\n") != std::string::npos);
  Run dual = run_cli({"export-example", "z3", "--as", "dual"});
  CHECK(dual.code == kPass);
  SpecFile s = parse_spec(dual.out);
  CHECK(s.kind == SpecKind::weak_hopf);
  CHECK(verify_axioms(*s.whopf).all_passed());
}
