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

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "qpl/calculus.hpp"

namespace qpl {

namespace {

constexpr std::pair<Variant, std::string_view> kVariantNames[] = {
    {Variant::original, "orig"}, {Variant::l1, "l1"}, {Variant::l2, "l2"},
    {Variant::pfqpl, "pfqpl"},   {Variant::qpl, "qpl"},
};

constexpr std::string_view kRuleNames[] = {
    "TopI", "AndI", "AndE_L", "AndE_R", "OrI_L",  "OrI_R",   "OrE",     "ImpI",
    "ImpAx", "ImpE", "BotE",  "ForallI", "ForallE", "ExistsI", "ExistsE",
};

std::size_t premise_count(RuleName r) {
  switch (r) {
    case RuleName::TopI:
    case RuleName::ImpAx:
      return 0;
    case RuleName::AndI:
    case RuleName::ImpE:
      return 2;
    default:
      return 1;
  }
}

RejectReason shape(std::string msg) { return {RejectReason::Kind::shape_mismatch, std::move(msg)}; }
RejectReason side(std::string msg) { return {RejectReason::Kind::side_condition, std::move(msg)}; }

bool match_walk(const FormulaStore& store, FormulaId body, FormulaId inst, TermId x,
                std::optional<TermId>& t) {
  if (!store.has_free(body, x)) return body == inst;
  const Kind k = store.kind(body);
  if (k != store.kind(inst)) return false;
  switch (k) {
    case Kind::top:
    case Kind::bot:
      return true;
    case Kind::atom: {
      if (store.relation_of(body) != store.relation_of(inst)) return false;
      auto bargs = store.args(body);
      auto iargs = store.args(inst);
      for (std::size_t i = 0; i < bargs.size(); ++i) {
        if (bargs[i] == x) {
          if (!t) t = iargs[i];
          if (*t != iargs[i]) return false;
        } else if (bargs[i] != iargs[i]) {
          return false;
        }
      }
      return true;
    }
    case Kind::conj:
    case Kind::disj:
    case Kind::imp:
      return match_walk(store, store.lhs(body), store.lhs(inst), x, t) &&
             match_walk(store, store.rhs(body), store.rhs(inst), x, t);
    case Kind::forall:
    case Kind::exists:
      // x free here, so the binder is not x.
      return store.bound_var(body) == store.bound_var(inst) &&
             match_walk(store, store.body(body), store.body(inst), x, t);
  }
  return false;
}

}  // namespace

std::string_view to_string(Variant v) {
  for (auto [var, name] : kVariantNames)
    if (var == v) return name;
  return "?";
}

std::optional<Variant> variant_from_string(std::string_view name) {
  for (auto [var, n] : kVariantNames)
    if (n == name) return var;
  return std::nullopt;
}

std::string_view to_string(RuleName r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<RuleName> rule_from_string(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kRuleNames); ++i)
    if (kRuleNames[i] == name) return static_cast<RuleName>(i);
  return std::nullopt;
}

Variant introduced_in(RuleName r) {
  switch (r) {
    case RuleName::TopI:
    case RuleName::AndI:
    case RuleName::AndE_L:
    case RuleName::AndE_R:
    case RuleName::ImpI:
    case RuleName::ImpE:
      return Variant::original;
    case RuleName::OrI_L:
    case RuleName::OrI_R:
    case RuleName::OrE:
      return Variant::l1;
    case RuleName::BotE:
      return Variant::l2;
    case RuleName::ImpAx:
      return Variant::pfqpl;
    case RuleName::ForallI:
    case RuleName::ForallE:
    case RuleName::ExistsI:
    case RuleName::ExistsE:
      return Variant::qpl;
  }
  return Variant::qpl;
}

std::string_view to_string(RejectReason::Kind k) {
  switch (k) {
    case RejectReason::Kind::unknown_rule: return "unknown rule in variant";
    case RejectReason::Kind::shape_mismatch: return "shape mismatch";
    case RejectReason::Kind::side_condition: return "side condition violated";
    case RejectReason::Kind::not_hypothesis: return "not a hypothesis";
    case RejectReason::Kind::not_axiom: return "not an axiom";
  }
  return "?";
}

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::axiom: return "axiom";
    case NodeKind::hypothesis: return "hypothesis";
    case NodeKind::rule: return "rule";
  }
  return "?";
}

std::optional<std::optional<TermId>> match_instance(FormulaStore& store, FormulaId body, TermId x,
                                                    FormulaId instance) {
  std::optional<TermId> t;
  if (!match_walk(store, body, instance, x, t)) return std::nullopt;
  return t;
}

bool is_axiom(const FormulaStore& store, Variant variant, FormulaId f) {
  if (store.kind(f) == Kind::top) return true;
  return variant >= Variant::pfqpl && store.kind(f) == Kind::imp && store.lhs(f) == store.rhs(f);
}

MatchResult match_rule(FormulaStore& store, Variant variant, RuleName name, std::span<const FormulaId> premises,
                       FormulaId c) {
  if (!available(variant, name))
    return RejectReason{RejectReason::Kind::unknown_rule,
                        std::string(to_string(name)) + " is not a rule of " + std::string(to_string(variant))};
  if (premises.size() != premise_count(name))
    return shape(std::string(to_string(name)) + " takes " + std::to_string(premise_count(name)) + " premises, got " +
                 std::to_string(premises.size()));

  auto ok = [&]() -> MatchResult { return RuleInstance{name, {premises.begin(), premises.end()}, c}; };
  auto kind = [&](FormulaId f) { return store.kind(f); };

  switch (name) {
    case RuleName::TopI:
      if (kind(c) != Kind::top) return shape("conclusion is not true");
      return ok();
    case RuleName::AndI:
      if (kind(c) != Kind::conj || store.lhs(c) != premises[0] || store.rhs(c) != premises[1])
        return shape("conclusion is not the conjunction of the premises");
      return ok();
    case RuleName::AndE_L:
    case RuleName::AndE_R: {
      if (kind(premises[0]) != Kind::conj) return shape("premise is not a conjunction");
      const FormulaId part = name == RuleName::AndE_L ? store.lhs(premises[0]) : store.rhs(premises[0]);
      if (part != c) return shape("conclusion is not the selected conjunct");
      return ok();
    }
    case RuleName::OrI_L:
    case RuleName::OrI_R: {
      if (kind(c) != Kind::disj) return shape("conclusion is not a disjunction");
      const FormulaId part = name == RuleName::OrI_L ? store.lhs(c) : store.rhs(c);
      if (part != premises[0]) return shape("premise is not the selected disjunct");
      return ok();
    }
    case RuleName::OrE:
      if (kind(premises[0]) != Kind::disj) return shape("premise is not a disjunction");
      if (store.lhs(premises[0]) != store.rhs(premises[0])) return side("disjuncts differ; only A | A eliminates");
      if (store.lhs(premises[0]) != c) return shape("conclusion is not the disjunct");
      return ok();
    case RuleName::ImpI:
      if (kind(c) != Kind::imp || store.rhs(c) != premises[0])
        return shape("conclusion is not an implication with the premise as consequent");
      return ok();
    case RuleName::ImpAx:
      if (kind(c) != Kind::imp || store.lhs(c) != store.rhs(c)) return shape("conclusion is not of the form A -> A");
      return ok();
    case RuleName::ImpE:
      if (kind(premises[1]) != Kind::imp || store.lhs(premises[1]) != premises[0] || store.rhs(premises[1]) != c)
        return shape("premises are not <A, A -> B> with conclusion B");
      return ok();
    case RuleName::BotE:
      if (kind(premises[0]) != Kind::bot) return shape("premise is not false");
      return ok();
    case RuleName::ForallI:
      if (kind(c) != Kind::forall || store.body(c) != premises[0])
        return shape("conclusion does not quantify the premise");
      if (store.has_free(premises[0], store.bound_var(c)))
        return side("variable " + store.name(store.bound_var(c)) + " is free in the premise");
      return ok();
    case RuleName::ExistsE:
      if (kind(premises[0]) != Kind::exists || store.body(premises[0]) != c)
        return shape("premise does not quantify the conclusion");
      if (store.has_free(c, store.bound_var(premises[0])))
        return side("variable " + store.name(store.bound_var(premises[0])) + " is free in the conclusion");
      return ok();
    case RuleName::ForallE:
    case RuleName::ExistsI: {
      const bool elim = name == RuleName::ForallE;
      const FormulaId quant = elim ? premises[0] : c;
      const FormulaId inst = elim ? c : premises[0];
      if (kind(quant) != (elim ? Kind::forall : Kind::exists))
        return shape(elim ? "premise is not universally quantified" : "conclusion is not existentially quantified");
      const TermId x = store.bound_var(quant);
      auto t = match_instance(store, store.body(quant), x, inst);
      if (!t) return shape("not a substitution instance of the quantified body");
      if (*t && !substitute(store, store.body(quant), x, **t))
        return side("term " + store.name(**t) + " is not substitutable for " + store.name(x));
      return ok();
    }
  }
  return shape("unknown rule");
}

const DerivationNode* Derivation::find(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::string CheckReport::summary() const {
  if (structural_error) return "malformed derivation: " + *structural_error;
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& n : nodes) {
    if (n.ok) continue;
    ++failed;
    out << "node " << n.id << ": " << to_string(n.reason->kind) << " (" << n.reason->message << ")\n";
  }
  if (conclusion_error) out << *conclusion_error << "\n";
  if (ok) return "derivation valid (" + std::to_string(nodes.size()) + " nodes)";
  return "derivation invalid, " + std::to_string(failed) + " failing node(s)\n" + out.str();
}

namespace {

// Maps ids to positions and detects dangling parents, duplicates and cycles.
std::optional<std::string> validate_structure(const Derivation& d, std::unordered_map<int, std::size_t>& pos) {
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    if (!pos.emplace(d.nodes[i].id, i).second) return "duplicate node id " + std::to_string(d.nodes[i].id);
  if (!pos.count(d.root)) return "root id " + std::to_string(d.root) + " does not exist";
  for (const auto& n : d.nodes)
    for (int p : n.parents)
      if (!pos.count(p)) return "node " + std::to_string(n.id) + " has dangling parent " + std::to_string(p);

  enum : char { white, grey, black };
  std::vector<char> color(d.nodes.size(), white);
  for (std::size_t start = 0; start < d.nodes.size(); ++start) {
    if (color[start] != white) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    color[start] = grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& parents = d.nodes[node].parents;
      if (next == parents.size()) {
        color[node] = black;
        stack.pop_back();
        continue;
      }
      const std::size_t p = pos.at(parents[next++]);
      if (color[p] == grey) return "cycle through node " + std::to_string(d.nodes[p].id);
      if (color[p] == white) {
        color[p] = grey;
        stack.emplace_back(p, 0);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CheckReport check_derivation(FormulaStore& store, const Derivation& d, Variant variant,
                             std::span<const FormulaId> hyps, std::optional<FormulaId> expected_conclusion) {
  CheckReport report;
  std::unordered_map<int, std::size_t> pos;
  if (auto err = validate_structure(d, pos)) {
    report.structural_error = std::move(err);
    return report;
  }
  const std::unordered_set<FormulaId> hyp_set(hyps.begin(), hyps.end());
  bool all_ok = true;
  for (const auto& n : d.nodes) {
    NodeReport nr{n.id, true, std::nullopt};
    auto reject = [&](RejectReason r) {
      nr.ok = false;
      nr.reason = std::move(r);
    };
    switch (n.kind) {
      case NodeKind::hypothesis:
        if (!n.parents.empty())
          reject(shape("hypothesis node has parents"));
        else if (!hyp_set.count(n.label))
          reject({RejectReason::Kind::not_hypothesis, render(store, n.label) + " is not among the hypotheses"});
        break;
      case NodeKind::axiom:
        if (!n.parents.empty()) {
          reject(shape("axiom node has parents"));
        } else if (!is_axiom(store, variant, n.label)) {
          reject({RejectReason::Kind::not_axiom,
                  render(store, n.label) + " is not an axiom of " + std::string(to_string(variant))});
        } else if (n.rule) {
          auto m = match_rule(store, variant, *n.rule, {}, n.label);
          if (auto* r = std::get_if<RejectReason>(&m)) reject(*r);
        }
        break;
      case NodeKind::rule: {
        if (!n.rule) {
          reject(shape("rule node without a rule name"));
          break;
        }
        if (n.parents.empty()) {
          reject(shape("rule node without premises; axioms belong in axiom nodes"));
          break;
        }
        std::vector<FormulaId> premises;
        premises.reserve(n.parents.size());
        for (int p : n.parents) premises.push_back(d.nodes[pos.at(p)].label);
        auto m = match_rule(store, variant, *n.rule, premises, n.label);
        if (auto* r = std::get_if<RejectReason>(&m)) reject(*r);
        break;
      }
    }
    all_ok = all_ok && nr.ok;
    report.nodes.push_back(std::move(nr));
  }
  const FormulaId root_label = d.nodes[pos.at(d.root)].label;
  if (expected_conclusion && root_label != *expected_conclusion) {
    report.conclusion_error =
        "root label " + render(store, root_label) + " differs from expected " + render(store, *expected_conclusion);
    all_ok = false;
  }
  report.ok = all_ok;
  return report;
}

std::size_t tree_size(const Derivation& d, std::size_t cap) {
  std::unordered_map<int, std::size_t> pos;
  if (auto err = validate_structure(d, pos)) throw Error("malformed derivation: " + *err);
  std::vector<std::size_t> size(d.nodes.size(), 0);
  // Post-order over the DAG from the root.
  std::vector<std::pair<std::size_t, bool>> stack{{pos.at(d.root), false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    if (size[i]) continue;
    if (!expanded) {
      stack.emplace_back(i, true);
      for (int p : d.nodes[i].parents)
        if (!size[pos.at(p)]) stack.emplace_back(pos.at(p), false);
      continue;
    }
    std::size_t total = 1;
    for (int p : d.nodes[i].parents) {
      total += size[pos.at(p)];
      if (total > cap) throw ResourceLimit("tree unfolding exceeds " + std::to_string(cap) + " nodes");
    }
    size[i] = total;
  }
  return size[pos.at(d.root)];
}

Derivation expand_tree(const Derivation& d, std::size_t cap) {
  tree_size(d, cap);
  std::unordered_map<int, std::size_t> pos;
  validate_structure(d, pos);
  Derivation out;
  // Each frame copies one occurrence; children ids are collected as they finish.
  struct Frame {
    std::size_t src;
    std::size_t next = 0;
    std::vector<int> new_parents;
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{pos.at(d.root), 0, {}});
  int finished = -1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (finished >= 0) {
      f.new_parents.push_back(finished);
      finished = -1;
    }
    const auto& src = d.nodes[f.src];
    if (f.next < src.parents.size()) {
      const std::size_t p = pos.at(src.parents[f.next++]);
      stack.push_back(Frame{p, 0, {}});
      continue;
    }
    DerivationNode n = src;
    n.id = static_cast<int>(out.nodes.size());
    n.parents = std::move(f.new_parents);
    out.nodes.push_back(std::move(n));
    finished = out.nodes.back().id;
    stack.pop_back();
  }
  out.root = finished;
  return out;
}

}  // namespace qpl
