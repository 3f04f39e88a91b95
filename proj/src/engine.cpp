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
#include <unordered_set>

#include "qpl/engine.hpp"

namespace qpl {

RuleTable compile_rules(const ClosureTable& ct, Variant variant) {
  const FormulaStore& store = ct.store();
  RuleTable table;
  table.variant_ = variant;
  auto& out = table.instances_;

  auto emit1 = [&](RuleName r, std::uint32_t p, std::uint32_t c) {
    if (available(variant, r)) out.push_back({r, 1, {p, 0}, c});
  };
  auto emit2 = [&](RuleName r, std::uint32_t p, std::uint32_t q, std::uint32_t c) {
    if (available(variant, r)) out.push_back({r, 2, {p, q}, c});
  };

  for (std::uint32_t x = 0; x < ct.size(); ++x) {
    const FormulaId f = ct.formula(x);
    switch (store.kind(f)) {
      case Kind::top:
        table.axiom_seeds_.push_back(x);
        break;
      case Kind::bot:
        if (available(variant, RuleName::BotE)) table.bottom_ = x;
        break;
      case Kind::atom:
        break;
      case Kind::conj: {
        const auto a = ct.index_of(store.lhs(f)), b = ct.index_of(store.rhs(f));
        emit2(RuleName::AndI, a, b, x);
        emit1(RuleName::AndE_L, x, a);
        emit1(RuleName::AndE_R, x, b);
        break;
      }
      case Kind::disj: {
        const auto a = ct.index_of(store.lhs(f)), b = ct.index_of(store.rhs(f));
        emit1(RuleName::OrI_L, a, x);
        if (a == b)
          emit1(RuleName::OrE, x, a);
        else
          emit1(RuleName::OrI_R, b, x);
        break;
      }
      case Kind::imp: {
        const auto a = ct.index_of(store.lhs(f)), b = ct.index_of(store.rhs(f));
        if (a == b && available(variant, RuleName::ImpAx)) table.axiom_seeds_.push_back(x);
        emit1(RuleName::ImpI, b, x);
        emit2(RuleName::ImpE, a, x, b);
        break;
      }
      case Kind::forall: {
        for (std::uint32_t y : ct.sub(x)) emit1(RuleName::ForallE, x, y);
        if (!store.has_free(store.body(f), store.bound_var(f)))
          emit1(RuleName::ForallI, ct.index_of(store.body(f)), x);
        break;
      }
      case Kind::exists: {
        for (std::uint32_t y : ct.sub(x)) emit1(RuleName::ExistsI, y, x);
        if (!store.has_free(store.body(f), store.bound_var(f)))
          emit1(RuleName::ExistsE, x, ct.index_of(store.body(f)));
        break;
      }
    }
  }

  // Watch lists in CSR form, one entry per premise slot.
  table.watch_offsets_.assign(ct.size() + 1, 0);
  for (const auto& inst : out)
    for (std::uint8_t s = 0; s < inst.arity; ++s) ++table.watch_offsets_[inst.premises[s] + 1];
  for (std::size_t i = 1; i < table.watch_offsets_.size(); ++i)
    table.watch_offsets_[i] += table.watch_offsets_[i - 1];
  table.watch_data_.resize(table.watch_offsets_.back());
  std::vector<std::uint32_t> fill(table.watch_offsets_.begin(), table.watch_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < out.size(); ++i)
    for (std::uint8_t s = 0; s < out[i].arity; ++s) table.watch_data_[fill[out[i].premises[s]]++] = i;
  return table;
}

SaturationState saturate(const ClosureTable& ct, const RuleTable& rules, std::span<const FormulaId> hyps,
                         std::optional<FormulaId> stop_at) {
  const std::size_t n = ct.size();
  SaturationState st;
  st.variant = rules.variant();
  st.derived.assign(n, 0);
  st.provenance.assign(n, Provenance{});
  st.stats.universe_size = n;
  st.stats.instance_count = rules.instances().size();

  std::uint32_t stop = RuleTable::npos;
  if (stop_at) {
    stop = ct.index_of(*stop_at);
    if (stop == RuleTable::npos) throw InternalError("saturate: stop target outside the closure");
  }

  const auto instances = rules.instances();
  std::vector<std::uint8_t> pending(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) pending[i] = instances[i].arity;

  std::vector<std::uint32_t> agenda;
  agenda.reserve(n);
  bool stopped = false;

  auto bottom_out = [&]() {
    st.bot_flag = true;
    const Provenance via_bot{Origin::rule, RuleName::BotE, 1, {rules.bottom(), 0}};
    if (stop != RuleTable::npos) {
      if (!st.derived[stop]) {
        st.derived[stop] = 1;
        st.provenance[stop] = via_bot;
      }
      stopped = true;
      return;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      if (st.derived[i]) continue;
      st.derived[i] = 1;
      st.provenance[i] = via_bot;
    }
    stopped = true;
    st.complete = true;
  };

  auto mark = [&](std::uint32_t idx, const Provenance& why) {
    if (st.derived[idx]) return;
    st.derived[idx] = 1;
    st.provenance[idx] = why;
    agenda.push_back(idx);
    if (idx == stop) {
      stopped = true;
    } else if (idx == rules.bottom()) {
      bottom_out();
    }
  };

  for (FormulaId h : hyps) {
    const std::uint32_t idx = ct.index_of(h);
    if (idx == RuleTable::npos) throw InternalError("saturate: hypothesis outside the closure");
    mark(idx, Provenance{Origin::hypothesis});
    if (stopped) break;
  }
  if (!stopped) {
    for (std::uint32_t a : rules.axiom_seeds()) {
      const RuleName r = ct.store().kind(ct.formula(a)) == Kind::top ? RuleName::TopI : RuleName::ImpAx;
      mark(a, Provenance{Origin::axiom, r});
      if (stopped) break;
    }
  }

  std::size_t head = 0;
  while (!stopped && head < agenda.size()) {
    const std::uint32_t idx = agenda[head++];
    ++st.stats.agenda_pops;
    for (std::uint32_t w : rules.watchers(idx)) {
      if (--pending[w] != 0) continue;
      ++st.stats.instances_fired;
      const CompiledInstance& inst = instances[w];
      mark(inst.conclusion, Provenance{Origin::rule, inst.rule, inst.arity, inst.premises});
      if (stopped) break;
    }
  }
  if (!stopped) st.complete = true;
  st.stats.derived_count = static_cast<std::size_t>(std::count(st.derived.begin(), st.derived.end(), 1));
  return st;
}

Derivation extract_proof(const SaturationState& state, const ClosureTable& ct, FormulaId target) {
  const std::uint32_t root = ct.index_of(target);
  if (root == RuleTable::npos || !state.is_derived(root))
    throw InternalError("extract_proof: target " + render(ct.store(), target) + " is not derived");

  Derivation d;
  std::vector<int> node_of(ct.size(), -1);
  std::vector<std::pair<std::uint32_t, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [idx, expanded] = stack.back();
    stack.pop_back();
    if (node_of[idx] >= 0) continue;
    const Provenance& p = state.provenance[idx];
    if (p.origin == Origin::none) throw InternalError("extract_proof: derived entry without provenance");
    if (!expanded && p.origin == Origin::rule) {
      stack.emplace_back(idx, true);
      for (std::uint8_t s = p.arity; s-- > 0;) {
        const std::uint32_t q = p.premises[s];
        if (!state.is_derived(q)) throw InternalError("extract_proof: premise not derived");
        if (node_of[q] < 0) stack.emplace_back(q, false);
      }
      continue;
    }
    DerivationNode node;
    node.id = static_cast<int>(d.nodes.size());
    node.label = ct.formula(idx);
    switch (p.origin) {
      case Origin::hypothesis:
        node.kind = NodeKind::hypothesis;
        break;
      case Origin::axiom:
        node.kind = NodeKind::axiom;
        break;
      case Origin::rule:
        node.kind = NodeKind::rule;
        node.rule = p.rule;
        for (std::uint8_t s = 0; s < p.arity; ++s) {
          const int parent = node_of[p.premises[s]];
          if (parent < 0) throw InternalError("extract_proof: provenance is not well-founded");
          node.parents.push_back(parent);
        }
        break;
      case Origin::none:
        break;
    }
    node_of[idx] = node.id;
    d.nodes.push_back(std::move(node));
  }
  d.root = node_of[root];
  return d;
}

std::vector<FormulaId> local_axioms(const FormulaStore& store, std::span<const FormulaId> hyps,
                                    std::span<const FormulaId> queries) {
  std::vector<FormulaId> out;
  std::unordered_set<FormulaId> seen;
  auto scan = [&](FormulaId f) {
    for (FormulaId g : literal_subformulas(store, f))
      if (store.kind(g) == Kind::imp && store.lhs(g) == store.rhs(g) && seen.insert(g).second) out.push_back(g);
  };
  for (FormulaId h : hyps) scan(h);
  for (FormulaId q : queries) scan(q);
  return out;
}

Verdict entails(FormulaStore& store, std::span<const FormulaId> hyps, FormulaId query, Variant variant,
                const EngineOptions& options) {
  std::vector<FormulaId> s(hyps.begin(), hyps.end());
  s.push_back(query);
  auto ct = std::make_shared<const ClosureTable>(ClosureTable::build(store, s, options.closure_cap));
  const RuleTable rules = compile_rules(*ct, variant);
  auto state = std::make_shared<const SaturationState>(saturate(*ct, rules, hyps, query));

  Verdict v;
  v.entailed = state->is_derived(ct->index_of(query));
  v.stats = state->stats;
  if (v.entailed) v.proof = extract_proof(*state, *ct, query);
  v.closure = std::move(ct);
  v.state = std::move(state);
  return v;
}

std::vector<bool> multi_entails(FormulaStore& store, std::span<const FormulaId> hyps,
                                std::span<const FormulaId> queries, Variant variant, const EngineOptions& options) {
  std::vector<FormulaId> s(hyps.begin(), hyps.end());
  s.insert(s.end(), queries.begin(), queries.end());
  const ClosureTable ct = ClosureTable::build(store, s, options.closure_cap);
  const RuleTable rules = compile_rules(ct, variant);
  const SaturationState state = saturate(ct, rules, hyps);
  std::vector<bool> out;
  out.reserve(queries.size());
  for (FormulaId q : queries) out.push_back(state.is_derived(ct.index_of(q)));
  return out;
}

}  // namespace qpl
