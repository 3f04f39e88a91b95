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

#include "qpl/engine.hpp"
#include "qpl/generators.hpp"
#include "qpl/semantics.hpp"
#include "support/helpers.hpp"
#include "support/reference.hpp"

namespace qpl {
namespace {

// Direct reading of the satisfaction clauses, recursing through substitution.
bool ref_models(FormulaStore& s, const StandardModel& m, const OverrideFn& o, const std::vector<TermId>& params,
                FormulaId f) {
  auto rec = [&](FormulaId g) { return ref_models(s, m, o, params, g); };
  switch (s.kind(f)) {
    case Kind::top:
      return true;
    case Kind::bot:
      return false;
    case Kind::atom:
      return m.holds(ground_atom(s, f));
    case Kind::conj:
      return rec(s.lhs(f)) && rec(s.rhs(f));
    case Kind::disj:
      if (s.lhs(f) == s.rhs(f)) return rec(s.lhs(f));
      return rec(s.lhs(f)) || rec(s.rhs(f)) || o.at(f);
    case Kind::imp:
      if (s.lhs(f) == s.rhs(f)) return true;
      return rec(s.rhs(f)) || (!rec(s.lhs(f)) && o.at(f));
    case Kind::forall:
    case Kind::exists: {
      const TermId x = s.bound_var(f);
      const FormulaId body = s.body(f);
      if (!ref::free_set(s, body).contains(x)) return rec(body);
      const bool all = s.kind(f) == Kind::forall;
      bool acc = all;
      for (TermId t : params) {
        auto inst = ref::subst(s, body, x, t);
        if (!inst) continue;
        if (all)
          acc = acc && rec(*inst);
        else
          acc = acc || rec(*inst);
      }
      return all ? acc && o.at(f) : acc || o.at(f);
    }
  }
  return false;
}

struct Interp {
  StandardModel m;
  OverrideFn o;
};

Interp random_interp(const ClosureTable& ct, std::mt19937_64& rng) {
  Interp it;
  it.m.universe = ct.params();
  it.m.relations = closure_relations(ct);
  for (FormulaId f : ct.universe())
    if (ct.store().kind(f) == Kind::atom && rng() % 2) it.m.true_atoms.insert(ground_atom(ct.store(), f));
  for (FormulaId f : override_domain(ct)) it.o.assignment[f] = rng() % 2;
  return it;
}

TEST_CASE("override domain") {
  FormulaStore s;
  test::Parser p(s);
  {
    const FormulaId src[] = {p("p | q"), p("p -> p")};
    CHECK(override_domain(ClosureTable::build(s, src)) == p({"p | q"}));
  }
  {
    const FormulaId src[] = {p("forall x. R(x)"), p("R(c)")};
    CHECK(override_domain(ClosureTable::build(s, src)) == p({"forall x. R(x)"}));
  }
  {
    const FormulaId src[] = {p("p | p")};
    CHECK(override_domain(ClosureTable::build(s, src)).empty());
  }
  {
    const FormulaId src[] = {p("forall x. q")};
    CHECK(override_domain(ClosureTable::build(s, src)).empty());
  }
}

TEST_CASE("o_models examples") {
  FormulaStore s;
  test::Parser p(s);
  const FormulaId src[] = {p("A -> B"), p("B -> C"), p("A -> C"), p("p | q"), p("true")};
  const ClosureTable ct = ClosureTable::build(s, src);
  StandardModel m;
  m.universe = ct.params();
  OverrideFn o;
  o.assignment = {{p("A -> B"), true}, {p("B -> C"), true}, {p("A -> C"), false}, {p("p | q"), true}};
  CHECK(o_models(m, o, p("true"), ct));
  CHECK(o_models(m, o, p("A -> B"), ct));
  CHECK_FALSE(o_models(m, o, p("A -> C"), ct));
  CHECK(o_models(m, o, p("p | q"), ct));
  o.assignment[p("p | q")] = false;
  CHECK_FALSE(o_models(m, o, p("p | q"), ct));
  CHECK_THROWS_AS(o_models(m, o, p("r"), ct), Error);
}

TEST_CASE("brute-force semantic consequence") {
  FormulaStore s;
  test::Parser p(s);
  CHECK(semantic_yields_bruteforce(s, p({"A"}), p("A | B")));
  CHECK(semantic_yields_bruteforce(s, {}, p("A -> A")));
  CHECK_FALSE(semantic_yields_bruteforce(s, p({"A -> B", "B -> C"}), p("A -> C")));
  CHECK_FALSE(semantic_yields_bruteforce(s, p({"exists x. R(x)"}), p("R(c)")));
  CHECK_THROWS_AS(semantic_yields_bruteforce(s, p({"A -> B", "B -> C"}), p("A -> C"), 3), TooLarge);
}

TEST_CASE("countermodels") {
  FormulaStore s;
  test::Parser p(s);
  {
    const auto h = p({"A -> B", "B -> C"});
    const Verdict v = entails(s, h, p("A -> C"), Variant::qpl);
    REQUIRE_FALSE(v.entailed);
    REQUIRE(v.state->complete);
    const Countermodel cm = countermodel(h, p("A -> C"), *v.state, *v.closure);
    CHECK(cm.model.true_atoms.empty());
    CHECK(cm.override_fn.at(p("A -> B")));
    CHECK(cm.override_fn.at(p("B -> C")));
    CHECK_FALSE(cm.override_fn.at(p("A -> C")));
  }
  {
    const auto h = p({"p"});
    const Verdict v = entails(s, h, p("q"), Variant::qpl);
    const Countermodel cm = countermodel(h, p("q"), *v.state, *v.closure);
    CHECK(cm.model.holds(ground_atom(s, p("p"))));
    CHECK_FALSE(cm.model.holds(ground_atom(s, p("q"))));
  }
  {
    const auto h = p({"exists x. R(x)"});
    const Verdict v = entails(s, h, p("R(c)"), Variant::qpl);
    const Countermodel cm = countermodel(h, p("R(c)"), *v.state, *v.closure);
    CHECK(cm.model.true_atoms.empty());
    CHECK(cm.override_fn.at(p("exists x. R(x)")));
    CHECK(o_models(cm.model, cm.override_fn, h[0], *v.closure));
    CHECK_FALSE(o_models(cm.model, cm.override_fn, p("R(c)"), *v.closure));
  }
  {
    // Variants below pfqpl lack A -> A, so the standard semantics does not fit them.
    const auto h = p({"p"});
    const Verdict v = entails(s, h, p("q -> q"), Variant::l2);
    REQUIRE_FALSE(v.entailed);
    CHECK_THROWS_AS(countermodel(h, p("q -> q"), *v.state, *v.closure), Error);
  }
  {
    const auto h = p({"p"});
    const Verdict v = entails(s, h, p("p"), Variant::qpl);
    CHECK_THROWS_AS(countermodel(h, p("p"), *v.state, *v.closure), Error);
  }
}

TEST_CASE("property: bit-parallel evaluation matches the recursive clauses") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    FormulaStore s;
    InstanceParams ip;
    ip.hyps = 3;
    ip.queries = 2;
    ip.unary = 2;
    ip.constants = 2;
    ip.free_variable = seed % 2 == 0;
    const Instance inst = random_instance(s, seed, ip, Variant::qpl);
    std::vector<FormulaId> src = inst.hyps;
    src.insert(src.end(), inst.queries.begin(), inst.queries.end());
    const ClosureTable ct = ClosureTable::build(s, src);
    const Evaluator ev(ct);
    for (int k = 0; k < 5; ++k) {
      const Interp it = random_interp(ct, rng);
      const std::vector<bool> fast = ev.evaluate(it.m, it.o);
      for (std::uint32_t i = 0; i < ct.size(); ++i)
        CHECK(fast[i] == ref_models(s, it.m, it.o, ct.params().elements, ct.formula(i)));
    }
  }
}

TEST_CASE("property: countermodels satisfy the truth lemma and proofs are sound") {
  std::mt19937_64 rng(5);
  std::size_t countermodels = 0, proofs = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    FormulaStore s;
    InstanceParams ip;
    ip.hyps = 3;
    ip.queries = 1;
    ip.unary = 1;
    ip.constants = 1;
    const Instance inst = random_instance(s, seed, ip, Variant::qpl);
    const FormulaId q = inst.queries[0];
    const Verdict v = entails(s, inst.hyps, q, Variant::qpl);
    if (!v.entailed) {
      // countermodel() throws if any closure formula breaks the truth lemma.
      const Countermodel cm = countermodel(inst.hyps, q, *v.state, *v.closure);
      CHECK_FALSE(o_models(cm.model, cm.override_fn, q, *v.closure));
      ++countermodels;
      continue;
    }
    ++proofs;
    const Evaluator ev(*v.closure);
    for (int k = 0; k < 20; ++k) {
      const Interp it = random_interp(*v.closure, rng);
      const std::vector<bool> val = ev.evaluate(it.m, it.o);
      const bool hyps_hold =
          std::all_of(inst.hyps.begin(), inst.hyps.end(), [&](FormulaId h) { return val[v.closure->index_of(h)]; });
      if (!hyps_hold) continue;
      for (const auto& n : v.proof->nodes) CHECK(val[v.closure->index_of(n.label)]);
    }
  }
  CHECK(countermodels > 20);
  CHECK(proofs > 20);
}

TEST_CASE("property: engine and brute force agree on small instances") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; checked < 150 && seed < 2000; ++seed) {
    FormulaStore s;
    InstanceParams ip;
    ip.hyps = 2;
    ip.queries = 1;
    ip.max_depth = 3;
    ip.unary = 1;
    ip.constants = 1;
    const Instance inst = random_instance(s, seed, ip, Variant::qpl);
    std::vector<FormulaId> src = inst.hyps;
    src.push_back(inst.queries[0]);
    if (oracle_exponent(ClosureTable::build(s, src)) > 16) continue;
    ++checked;
    CHECK(entails(s, inst.hyps, inst.queries[0], Variant::qpl).entailed ==
          semantic_yields_bruteforce(s, inst.hyps, inst.queries[0]));
  }
  CHECK(checked == 150);
}

}  // namespace
}  // namespace qpl
