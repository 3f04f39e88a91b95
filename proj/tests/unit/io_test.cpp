// Copyright 2026 The qpl Authors.
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

#include <doctest.h>

#include <cstdio>

#include "qpl/engine.hpp"
#include "qpl/generators.hpp"
#include "qpl/io.hpp"
#include "support/helpers.hpp"

namespace qpl {
namespace {

TEST_CASE("problem files") {
  FormulaStore s;
  const Problem p = read_problem(s,
                                 "# hypotheses\n"
                                 "@vars z\n"
                                 "\n"
                                 "R(z)   # a free variable\n"
                                 "forall x. R(x) -> Q(x, c)\n");
  CHECK(p.vars == std::vector<std::string>{"z"});
  REQUIRE(p.formulas.size() == 2);
  CHECK(render(s, p.formulas[0]) == "R(z)");
  CHECK(s.is_variable(s.args(p.formulas[0])[0]));

  // Directives apply to the whole file regardless of position.
  CHECK(read_problem(s, "R(w)\n@vars w\n").vars == std::vector<std::string>{"w"});
  const std::string extra[] = {"z"};
  CHECK(read_problem(s, "R(z)\n", extra).formulas.size() == 1);

  try {
    read_problem(s, "p\n\nq &\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(read_problem(s, "@variables x\n"), ParseError);
  CHECK_THROWS_AS(read_problem(s, "@vars 9x\n"), ParseError);
  CHECK_THROWS_AS(read_problem(s, "_0 -> p\n"), ParseError);
}

TEST_CASE("derivation JSON round trip") {
  FormulaStore s;
  test::Parser p(s);
  const auto hyps = p({"p & q"});
  const Verdict v = entails(s, hyps, p("q & p"), Variant::l1);
  REQUIRE(v.entailed);
  const Json j = derivation_to_json(s, *v.proof, hyps, Variant::l1);
  CHECK(j["root"] == 3);
  CHECK(j["nodes"][0]["kind"] == "hypothesis");
  CHECK(j["nodes"][0]["rule"].is_null());
  CHECK(j["nodes"][3]["rule"] == "AndI");
  CHECK(j["variant"] == "l1");

  FormulaStore fresh;
  const ProofDocument doc = derivation_from_json(fresh, Json::parse(j.dump()));
  CHECK(doc.variant == Variant::l1);
  REQUIRE(doc.hyps.size() == 1);
  CHECK(check_derivation(fresh, doc.derivation, *doc.variant, doc.hyps, parse_formula(fresh, "q & p")).ok);
  CHECK(derivation_to_json(fresh, doc.derivation, doc.hyps, *doc.variant).dump() == j.dump());
}

TEST_CASE("derivation JSON keeps free variables and the fixed constant") {
  FormulaStore s;
  test::Parser p(s, {"z"});
  const auto hyps = p({"forall x. R(x)"});
  {
    const Verdict v = entails(s, hyps, p("R(z)"), Variant::qpl);
    REQUIRE(v.entailed);
    const Json j = derivation_to_json(s, *v.proof, hyps, Variant::qpl);
    CHECK(j["vars"] == Json::array({"z"}));
    FormulaStore fresh;
    const ProofDocument doc = derivation_from_json(fresh, j);
    CHECK(check_derivation(fresh, doc.derivation, Variant::qpl, doc.hyps).ok);
  }
  {
    // The only parameter is the fixed constant, which appears in the proof.
    FormulaStore t;
    test::Parser q(t);
    const auto h = q({"forall x. R(x)"});
    const Verdict v = entails(t, h, q("exists y. R(y)"), Variant::qpl);
    REQUIRE(v.entailed);
    const Json j = derivation_to_json(t, *v.proof, h, Variant::qpl);
    CHECK(j.dump().find("_0") != std::string::npos);
    FormulaStore fresh;
    const ProofDocument doc = derivation_from_json(fresh, j);
    CHECK(check_derivation(fresh, doc.derivation, Variant::qpl, doc.hyps).ok);
  }
}

TEST_CASE("malformed derivation documents") {
  FormulaStore s;
  CHECK_THROWS_AS(derivation_from_json(s, Json::array()), Error);
  CHECK_THROWS_AS(derivation_from_json(s, Json::parse(R"({"nodes": []})")), Error);
  CHECK_THROWS_AS(derivation_from_json(s, Json::parse(R"({"root": 0, "nodes": [{"id": 0, "label": "p",
      "kind": "lemma"}]})")),
                  Error);
  CHECK_THROWS_AS(derivation_from_json(s, Json::parse(R"({"root": 0, "nodes": [{"id": 0, "label": "p",
      "kind": "rule", "rule": "Cut", "parents": []}]})")),
                  Error);
  CHECK_THROWS_AS(derivation_from_json(s, Json::parse(R"({"root": 0, "variant": "qpl2", "nodes": []})")), Error);
  CHECK_THROWS_AS(derivation_from_json(s, Json::parse(R"({"root": 0, "nodes": [{"id": 0, "label": "p &",
      "kind": "axiom"}]})")),
                  ParseError);
}

TEST_CASE("countermodel JSON") {
  FormulaStore s;
  test::Parser p(s);
  const auto hyps = p({"A -> B", "B -> C", "D"});
  const Verdict v = entails(s, hyps, p("A -> C"), Variant::qpl);
  const Countermodel cm = countermodel(hyps, p("A -> C"), *v.state, *v.closure);
  const Json j = countermodel_to_json(s, *v.closure, cm);
  CHECK(j["universe"] == Json::array({"_0"}));
  CHECK(j["atoms_true"] == Json::array({"D"}));
  CHECK(j["override"]["A -> B"] == true);
  CHECK(j["override"]["B -> C"] == true);
  CHECK(j["override"]["A -> C"] == false);
  CHECK(j["override"].size() == 3);
}

TEST_CASE("file helpers") {
  const std::string path = "io_test_scratch.txt";
  write_file(path, "p\nq\n");
  CHECK(read_file(path) == "p\nq\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("/nonexistent/dir/file"), Error);
}

}  // namespace
}  // namespace qpl
