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

#include <set>

#include "qpl/engine.hpp"
#include "qpl/generators.hpp"
#include "qpl/io.hpp"
#include "support/helpers.hpp"
#include "support/reference.hpp"

namespace qpl {
namespace {

bool entailed(FormulaStore& s, const std::vector<FormulaId>& hyps, FormulaId q, Variant v = Variant::qpl) {
  return entails(s, hyps, q, v).entailed;
}

std::vector<std::pair<RuleName, std::set<std::string>>> instance_summary(const FormulaStore& s,
                                                                        const ClosureTable& ct,
                                                                        const RuleTable& rt) {
  std::vector<std::pair<RuleName, std::set<std::string>>> out;
  for (const auto& inst : rt.instances()) {
    std::set<std::string> texts;
    for (std::uint8_t i = 0; i < inst.arity; ++i) texts.insert(render(s, ct.formula(inst.premises[i])));
    texts.insert("=> " + render(s, ct.formula(inst.conclusion)));
    out.emplace_back(inst.rule, texts);
  }
  return out;
}

TEST_CASE("local axioms") {
  FormulaStore s;
  test::Parser p(s);
  {
    const auto h = p({"(q -> q) -> r"});
    const auto q = p({"r"});
    CHECK(local_axioms(s, h, q) == p({"q -> q"}));
  }
  {
    const auto h = p({"p -> q"});
    const auto q = p({"q"});
    CHECK(local_axioms(s, h, q).empty());
  }
  {
    const auto h = p({"(p -> p) -> (p -> p)"});
    const auto got = local_axioms(s, h, {});
    CHECK(got == p({"(p -> p) -> (p -> p)", "p -> p"}));
    // Reference: every X -> X among the subformulas, no duplicates.
    std::set<FormulaId> want;
    for (FormulaId f : ref::subformulas(s, h[0]))
      if (s.kind(f) == Kind::imp && s.lhs(f) == s.rhs(f)) want.insert(f);
    CHECK(std::set<FormulaId>(got.begin(), got.end()) == want);
  }
}

TEST_CASE("compile_rules instance lists") {
  FormulaStore s;
  test::Parser p(s);
  {
    const FormulaId src[] = {p("p & q")};
    const ClosureTable ct = ClosureTable::build(s, src);
    const RuleTable rt = compile_rules(ct, Variant::qpl);
    CHECK(rt.instances().size() == 3);
  }
  {
    const FormulaId src[] = {p("forall x. R(x)"), p("R(c)")};
    const ClosureTable ct = ClosureTable::build(s, src);
    const RuleTable rt = compile_rules(ct, Variant::qpl);
    REQUIRE(rt.instances().size() == 1);
    CHECK(rt.instances()[0].rule == RuleName::ForallE);
    CHECK(ct.formula(rt.instances()[0].conclusion) == p("R(c)"));
  }
  {
    const FormulaId src[] = {p("exists x. p")};
    const ClosureTable ct = ClosureTable::build(s, src);
    const RuleTable rt = compile_rules(ct, Variant::qpl);
    const auto summary = instance_summary(s, ct, rt);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].first == RuleName::ExistsI);
    CHECK(summary[1].first == RuleName::ExistsE);
    // The same closure compiles to nothing before quantifier rules exist.
    CHECK(compile_rules(ct, Variant::pfqpl).instances().empty());
  }
  {
    const FormulaId src[] = {p("p | p"), p("q | r"), p("q -> q")};
    const ClosureTable ct = ClosureTable::build(s, src);
    const RuleTable rt = compile_rules(ct, Variant::pfqpl);
    std::multiset<RuleName> rules;
    for (const auto& inst : rt.instances()) rules.insert(inst.rule);
    CHECK(rules == std::multiset<RuleName>{RuleName::OrI_L, RuleName::OrE, RuleName::OrI_L, RuleName::OrI_R,
                                           RuleName::ImpI, RuleName::ImpE});
    CHECK(rt.axiom_seeds().size() == 1);
    CHECK(compile_rules(ct, Variant::l2).axiom_seeds().empty());
  }
}

TEST_CASE("saturate examples") {
  FormulaStore s;
  test::Parser p(s);
  {
    const auto h = p({"p", "p -> q"});
    const FormulaId src[] = {h[0], h[1], p("q")};
    const ClosureTable ct = ClosureTable::build(s, src);
    const SaturationState st = saturate(ct, compile_rules(ct, Variant::qpl), h);
    CHECK(st.complete);
    CHECK(st.stats.derived_count == 3);
  }
  {
    const auto h = p({"(q -> q) -> r"});
    CHECK(entailed(s, h, p("r"), Variant::pfqpl));
    CHECK_FALSE(entailed(s, h, p("r"), Variant::l2));
  }
  {
    const auto h = p({"exists x. R(x)"});
    const FormulaId q = p("R(c)");
    const FormulaId src[] = {h[0], q};
    const ClosureTable ct = ClosureTable::build(s, src);
    const SaturationState st = saturate(ct, compile_rules(ct, Variant::qpl), h);
    CHECK(st.stats.derived_count == 1);
    CHECK_FALSE(st.is_derived(ct.index_of(q)));
  }
}

TEST_CASE("entails examples") {
  FormulaStore s;
  test::Parser p(s);
  CHECK_FALSE(entailed(s, p({"A -> B", "B -> C"}), p("A -> C")));
  CHECK(entailed(s, p({"forall x. R(x)"}), p("R(c)")));
  CHECK(entailed(s, p({"false"}), p("forall x. exists y. S(x, y)")));
  CHECK(entailed(s, p({"R(c)"}), p("exists x. R(x)")));
  CHECK(entailed(s, p({"p"}), p("forall x. p")));
  CHECK(entailed(s, p({"exists x. p"}), p("p")));
  CHECK(entailed(s, {}, p("true"), Variant::original));
  CHECK(entailed(s, {}, p("q -> q"), Variant::pfqpl));
  CHECK_FALSE(entailed(s, {}, p("q -> q"), Variant::l2));
  CHECK(entailed(s, p({"true -> false"}), p("false")));
  CHECK_FALSE(entailed(s, p({"(true -> false) | false"}), p("false")));
  // Without BotE, false is inert.
  CHECK_FALSE(entailed(s, p({"false"}), p("p"), Variant::l1));
}

TEST_CASE("multi_entails") {
  FormulaStore s;
  test::Parser p(s);
  CHECK(multi_entails(s, p({"p", "p -> q & r"}), p({"q", "r", "s"}), Variant::qpl) ==
        std::vector<bool>{true, true, false});
  CHECK(multi_entails(s, p({"p | p"}), p({"p"}), Variant::l1) == std::vector<bool>{true});
  CHECK(multi_entails(s, {}, p({"true", "false"}), Variant::qpl) == std::vector<bool>{true, false});
}

TEST_CASE("extracted proofs") {
  FormulaStore s;
  test::Parser p(s);
  {
    const auto h = p({"p", "p -> q"});
    const Verdict v = entails(s, h, p("q"), Variant::qpl);
    REQUIRE(v.proof);
    CHECK(v.proof->nodes.size() == 3);
    CHECK(v.proof->nodes.back().rule == RuleName::ImpE);
    CHECK(v.proof->root == 2);
  }
  {
    const auto h = p({"p & q"});
    const Verdict v = entails(s, h, p("q & p"), Variant::qpl);
    REQUIRE(v.proof);
    CHECK(v.proof->nodes.size() == 4);
    std::multiset<RuleName> rules;
    for (const auto& n : v.proof->nodes)
      if (n.rule) rules.insert(*n.rule);
    CHECK(rules == std::multiset<RuleName>{RuleName::AndE_R, RuleName::AndE_L, RuleName::AndI});
    CHECK(check_derivation(s, *v.proof, Variant::qpl, h, p("q & p")).ok);
    // As a tree the shared hypothesis appears twice.
    CHECK(tree_size(*v.proof, 100) == 5);
  }
  {
    const auto h = p({"false"});
    const Verdict v = entails(s, h, p("r"), Variant::qpl);
    REQUIRE(v.proof);
    CHECK(v.proof->nodes.size() == 2);
    CHECK(v.proof->nodes.back().rule == RuleName::BotE);
  }
}

TEST_CASE("long chains do not recurse") {
  FormulaStore s;
  std::vector<FormulaId> hyps;
  auto atom = [&](std::size_t i) { return s.atom("p" + std::to_string(i), std::span<const TermId>{}); };
  const std::size_t n = 200000;
  hyps.push_back(atom(0));
  for (std::size_t i = 0; i < n; ++i) hyps.push_back(s.imp(atom(i), atom(i + 1)));
  const Verdict v = entails(s, hyps, atom(n), Variant::pfqpl);
  REQUIRE(v.proof);
  CHECK(v.proof->nodes.size() == 2 * n + 1);
  CHECK(check_derivation(s, *v.proof, Variant::pfqpl, hyps, atom(n)).ok);
}

TEST_CASE("property: proofs check, stay local and match early stop") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    FormulaStore s;
    InstanceParams ip;
    ip.hyps = 4;
    ip.queries = 3;
    ip.max_depth = 3;
    ip.unary = 1;
    ip.constants = 1;
    const Variant v = static_cast<Variant>(seed % 5);
    const Instance inst = random_instance(s, seed, ip, v);
    const std::vector<bool> joint = multi_entails(s, inst.hyps, inst.queries, v);
    for (std::size_t i = 0; i < inst.queries.size(); ++i) {
      const FormulaId q = inst.queries[i];
      const Verdict verdict = entails(s, inst.hyps, q, v);
      CHECK(verdict.entailed == joint[i]);

      // Full fixpoint over the same closure agrees with the early-stopped run.
      const SaturationState full = saturate(*verdict.closure, compile_rules(*verdict.closure, v), inst.hyps);
      CHECK(full.complete);
      CHECK(full.is_derived(verdict.closure->index_of(q)) == verdict.entailed);

      if (!verdict.entailed) continue;
      REQUIRE(verdict.proof);
      const Derivation& d = *verdict.proof;
      CHECK(check_derivation(s, d, v, inst.hyps, q).ok);
      CHECK(ref::check(s, d, v, inst.hyps, q));
      CHECK(d.nodes.back().id == d.root);
      std::vector<FormulaId> src = inst.hyps;
      src.push_back(q);
      const std::set<FormulaId> local = ref::closure(s, src);
      for (const auto& n : d.nodes) CHECK(local.contains(n.label));
      // Every later variant accepts the same derivation.
      for (int w = static_cast<int>(v); w <= static_cast<int>(Variant::qpl); ++w)
        CHECK(check_derivation(s, d, static_cast<Variant>(w), inst.hyps, q).ok);
    }
  }
}

TEST_CASE("property: determinism of verdicts and proof bytes") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      FormulaStore s;
      InstanceParams ip;
      ip.hyps = 4;
      ip.queries = 1;
      const Instance inst = random_instance(s, seed, ip, Variant::qpl);
      const Verdict v = entails(s, inst.hyps, inst.queries[0], Variant::qpl);
      const std::string text =
          v.proof ? derivation_to_json(s, *v.proof, inst.hyps, Variant::qpl).dump() : std::string("none");
      if (run == 0)
        first = text;
      else
        CHECK(text == first);
    }
  }
}

}  // namespace
}  // namespace qpl
