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

#include <random>

#include "qpl/calculus.hpp"
#include "qpl/closure.hpp"
#include "qpl/generators.hpp"
#include "support/helpers.hpp"
#include "support/reference.hpp"

namespace qpl {
namespace {

bool accepts(const MatchResult& m) { return std::holds_alternative<RuleInstance>(m); }

RejectReason::Kind reason(const MatchResult& m) {
  REQUIRE(std::holds_alternative<RejectReason>(m));
  return std::get<RejectReason>(m).kind;
}

constexpr Variant kVariants[] = {Variant::original, Variant::l1, Variant::l2, Variant::pfqpl, Variant::qpl};

TEST_CASE("variant and rule names") {
  for (Variant v : kVariants) CHECK(variant_from_string(to_string(v)) == v);
  for (RuleName r : kAllRules) CHECK(rule_from_string(to_string(r)) == r);
  CHECK(variant_from_string("orig") == Variant::original);
  CHECK_FALSE(variant_from_string("classical").has_value());
  CHECK(introduced_in(RuleName::OrE) == Variant::l1);
  CHECK(introduced_in(RuleName::BotE) == Variant::l2);
  CHECK(introduced_in(RuleName::ImpAx) == Variant::pfqpl);
  CHECK(introduced_in(RuleName::ExistsE) == Variant::qpl);
}

TEST_CASE("match_rule examples") {
  FormulaStore s;
  test::Parser p(s, {"x"});
  {
    const FormulaId prem[] = {p("p"), p("p -> q")};
    CHECK(accepts(match_rule(s, Variant::qpl, RuleName::ImpE, prem, p("q"))));
  }
  {
    const FormulaId prem[] = {p("R(x)")};
    CHECK(reason(match_rule(s, Variant::qpl, RuleName::ForallI, prem, p("forall x. R(x)"))) ==
          RejectReason::Kind::side_condition);
  }
  {
    const FormulaId prem[] = {p("p")};
    CHECK(reason(match_rule(s, Variant::original, RuleName::OrI_L, prem, p("p | q"))) ==
          RejectReason::Kind::unknown_rule);
    CHECK(accepts(match_rule(s, Variant::l1, RuleName::OrI_L, prem, p("p | q"))));
  }
}

TEST_CASE("schema shapes and side conditions") {
  FormulaStore s;
  test::Parser p(s, {"y"});
  auto m = [&](RuleName r, std::vector<FormulaId> prem, FormulaId c) { return match_rule(s, Variant::qpl, r, prem, c); };

  CHECK(accepts(m(RuleName::AndI, {p("p"), p("q")}, p("p & q"))));
  CHECK_FALSE(accepts(m(RuleName::AndI, {p("q"), p("p")}, p("p & q"))));
  CHECK(accepts(m(RuleName::AndE_L, {p("p & q")}, p("p"))));
  CHECK_FALSE(accepts(m(RuleName::AndE_L, {p("p & q")}, p("q"))));
  CHECK(accepts(m(RuleName::AndE_R, {p("p & q")}, p("q"))));
  CHECK(accepts(m(RuleName::OrI_R, {p("q")}, p("p | q"))));
  CHECK(accepts(m(RuleName::OrE, {p("p | p")}, p("p"))));
  CHECK_FALSE(accepts(m(RuleName::OrE, {p("p | q")}, p("p"))));
  CHECK(accepts(m(RuleName::ImpI, {p("q")}, p("p -> q"))));
  CHECK(accepts(m(RuleName::BotE, {p("false")}, p("r"))));
  CHECK_FALSE(accepts(m(RuleName::BotE, {p("p")}, p("r"))));
  CHECK(accepts(m(RuleName::ForallI, {p("p")}, p("forall x. p"))));
  CHECK(accepts(m(RuleName::ForallE, {p("forall x. R(x)")}, p("R(c)"))));
  CHECK(accepts(m(RuleName::ForallE, {p("forall x. R(x)")}, p("R(y)"))));
  CHECK_FALSE(accepts(m(RuleName::ForallE, {p("forall x. S(x, x)")}, p("S(c, d)"))));
  CHECK(accepts(m(RuleName::ExistsI, {p("R(c)")}, p("exists x. R(x)"))));
  CHECK(accepts(m(RuleName::ExistsI, {p("S(c, c)")}, p("exists x. S(x, c)"))));
  CHECK(accepts(m(RuleName::ExistsE, {p("exists x. p")}, p("p"))));
  CHECK(reason(m(RuleName::ExistsE, {p("exists x. R(x)")}, s.body(p("exists x. R(x)")))) ==
        RejectReason::Kind::side_condition);
  // y is not substitutable for x under exists y.
  CHECK(reason(m(RuleName::ForallE, {p("forall x. exists y. S(x, y)")}, p("exists y. S(y, y)"))) ==
        RejectReason::Kind::side_condition);
  CHECK(reason(m(RuleName::ImpE, {p("p")}, p("q"))) == RejectReason::Kind::shape_mismatch);
}

TEST_CASE("axioms") {
  FormulaStore s;
  test::Parser p(s);
  CHECK(is_axiom(s, Variant::original, s.top()));
  CHECK_FALSE(is_axiom(s, Variant::l2, p("p -> p")));
  CHECK(is_axiom(s, Variant::pfqpl, p("p -> p")));
  CHECK_FALSE(is_axiom(s, Variant::qpl, p("p -> q")));
}

Derivation modus_ponens(FormulaStore& s, test::Parser& p) {
  Derivation d;
  d.nodes = {{0, p("p"), NodeKind::hypothesis, std::nullopt, {}},
             {1, p("p -> q"), NodeKind::hypothesis, std::nullopt, {}},
             {2, p("q"), NodeKind::rule, RuleName::ImpE, {0, 1}}};
  d.root = 2;
  (void)s;
  return d;
}

TEST_CASE("check_derivation examples") {
  FormulaStore s;
  test::Parser p(s);
  {
    Derivation d;
    d.nodes = {{0, s.top(), NodeKind::axiom, RuleName::TopI, {}}};
    CHECK(check_derivation(s, d, Variant::original, {}).ok);
  }
  const auto hyps = p({"p", "p -> q"});
  Derivation d = modus_ponens(s, p);
  CHECK(check_derivation(s, d, Variant::original, hyps, p("q")).ok);
  CHECK_FALSE(check_derivation(s, d, Variant::original, hyps, p("p")).ok);

  d.nodes[2].parents = {1, 0};
  const CheckReport bad = check_derivation(s, d, Variant::original, hyps);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.structural_error.has_value());
  CHECK_FALSE(bad.nodes[2].ok);
}

TEST_CASE("structural errors are reported apart from logical ones") {
  FormulaStore s;
  test::Parser p(s);
  const auto hyps = p({"p", "p -> q"});
  Derivation cyc = modus_ponens(s, p);
  cyc.nodes[0].kind = NodeKind::rule;
  cyc.nodes[0].rule = RuleName::AndE_L;
  cyc.nodes[0].parents = {2};
  CHECK(check_derivation(s, cyc, Variant::qpl, hyps).structural_error.has_value());

  Derivation dangling = modus_ponens(s, p);
  dangling.nodes[2].parents = {0, 7};
  CHECK(check_derivation(s, dangling, Variant::qpl, hyps).structural_error.has_value());

  Derivation dup = modus_ponens(s, p);
  dup.nodes[1].id = 0;
  CHECK(check_derivation(s, dup, Variant::qpl, hyps).structural_error.has_value());

  Derivation no_root = modus_ponens(s, p);
  no_root.root = 9;
  CHECK(check_derivation(s, no_root, Variant::qpl, hyps).structural_error.has_value());
}

TEST_CASE("hypothesis and axiom leaves") {
  FormulaStore s;
  test::Parser p(s);
  Derivation d;
  d.nodes = {{0, p("q -> q"), NodeKind::axiom, RuleName::ImpAx, {}}};
  CHECK_FALSE(check_derivation(s, d, Variant::l2, {}).ok);
  CHECK(check_derivation(s, d, Variant::pfqpl, {}).ok);
  d.nodes[0].rule = RuleName::TopI;
  CHECK_FALSE(check_derivation(s, d, Variant::pfqpl, {}).ok);
  d.nodes[0] = {0, p("r"), NodeKind::hypothesis, std::nullopt, {}};
  CHECK_FALSE(check_derivation(s, d, Variant::qpl, {}).ok);
}

TEST_CASE("tree expansion unfolds shared premises") {
  FormulaStore s;
  test::Parser p(s);
  // p, then p & p, then (p & p) & (p & p): 7 tree nodes from 3 DAG nodes.
  Derivation d;
  d.nodes = {{0, p("p"), NodeKind::hypothesis, std::nullopt, {}},
             {1, p("p & p"), NodeKind::rule, RuleName::AndI, {0, 0}},
             {2, p("(p & p) & (p & p)"), NodeKind::rule, RuleName::AndI, {1, 1}}};
  d.root = 2;
  const FormulaId hyps[] = {p("p")};
  CHECK(tree_size(d, 100) == 7);
  const Derivation t = expand_tree(d, 100);
  CHECK(t.nodes.size() == 7);
  CHECK(t.root == 6);
  CHECK(check_derivation(s, t, Variant::original, hyps, p("(p & p) & (p & p)")).ok);
  CHECK_THROWS_AS(tree_size(d, 5), ResourceLimit);
}

TEST_CASE("property: match_rule agrees with the reference on random tuples") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    FormulaStore s;
    InstanceParams ip;
    ip.hyps = 3;
    ip.max_depth = 3;
    ip.unary = 2;
    ip.constants = 2;
    ip.free_variable = true;
    const Instance inst = random_instance(s, seed, ip, Variant::qpl);
    std::vector<FormulaId> src = inst.hyps;
    src.insert(src.end(), inst.queries.begin(), inst.queries.end());
    const ClosureTable ct = ClosureTable::build(s, src);
    const auto u = ct.universe();
    for (int k = 0; k < 200; ++k) {
      const RuleName r = kAllRules[rng() % std::size(kAllRules)];
      const Variant v = kVariants[rng() % std::size(kVariants)];
      std::vector<FormulaId> prem;
      const std::size_t n = 1 + rng() % 2;
      for (std::size_t i = 0; i < n; ++i) prem.push_back(u[rng() % u.size()]);
      const FormulaId c = u[rng() % u.size()];
      CHECK(accepts(match_rule(s, v, r, prem, c)) == ref::rule_ok(s, v, r, prem, c));
    }
  }
}

}  // namespace
}  // namespace qpl
