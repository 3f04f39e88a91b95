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
#include <limits>
#include <numeric>

#include "qpl/semantics.hpp"

namespace qpl {
namespace {

constexpr std::uint64_t kAll = ~std::uint64_t{0};
constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

bool vacuous(const FormulaStore& store, FormulaId q) { return !store.has_free(store.body(q), store.bound_var(q)); }

bool in_override_domain(const FormulaStore& store, FormulaId f) {
  switch (store.kind(f)) {
    case Kind::disj:
    case Kind::imp:
      return store.lhs(f) != store.rhs(f);
    case Kind::forall:
    case Kind::exists:
      return !vacuous(store, f);
    default:
      return false;
  }
}

// Lane i of pattern j carries bit j of i.
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

bool quantifier_free(const ClosureTable& ct) {
  const FormulaStore& store = ct.store();
  return std::all_of(ct.universe().begin(), ct.universe().end(),
                     [&](FormulaId f) { return store.quantifier_depth(f) == 0; });
}

}  // namespace

bool OverrideFn::at(FormulaId f) const {
  auto it = assignment.find(f);
  if (it == assignment.end()) throw Error("override function is undefined on a domain formula");
  return it->second;
}

std::vector<FormulaId> override_domain(const ClosureTable& ct) {
  std::vector<FormulaId> out;
  for (FormulaId f : ct.universe())
    if (in_override_domain(ct.store(), f)) out.push_back(f);
  return out;
}

std::vector<RelationId> closure_relations(const ClosureTable& ct) {
  std::vector<RelationId> out;
  for (FormulaId f : ct.universe())
    if (ct.store().kind(f) == Kind::atom) out.push_back(ct.store().relation_of(f));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t oracle_exponent(const ClosureTable& ct) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (RelationId r : closure_relations(ct)) {
    const std::uint64_t tuples = saturating_bound(1, ct.params().size(), static_cast<unsigned>(ct.store().arity(r)));
    total = tuples > kMax - total ? kMax : total + tuples;
  }
  const std::uint64_t domain = override_domain(ct).size();
  return domain > kMax - total ? kMax : total + domain;
}

Evaluator::Evaluator(const ClosureTable& ct) : ct_(&ct), slot_(ct.size(), kNoSlot) {
  const FormulaStore& store = ct.store();
  for (std::uint32_t i = 0; i < ct.size(); ++i) {
    const FormulaId f = ct.formula(i);
    if (store.kind(f) == Kind::atom) {
      slot_[i] = static_cast<std::uint32_t>(atoms_.size());
      atoms_.push_back(i);
    } else if (in_override_domain(store, f)) {
      slot_[i] = static_cast<std::uint32_t>(overrides_.size());
      overrides_.push_back(i);
    }
  }
  // Operands and instances are strictly shorter than the formula they feed.
  order_.resize(ct.size());
  std::iota(order_.begin(), order_.end(), 0u);
  std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return store.length(ct.formula(a)) < store.length(ct.formula(b));
  });
}

void Evaluator::evaluate(std::span<const std::uint64_t> atom_bits, std::span<const std::uint64_t> override_bits,
                         std::span<std::uint64_t> out) const {
  const FormulaStore& store = ct_->store();
  for (std::uint32_t i : order_) {
    const FormulaId f = ct_->formula(i);
    std::uint64_t v = 0;
    switch (store.kind(f)) {
      case Kind::top:
        v = kAll;
        break;
      case Kind::bot:
        v = 0;
        break;
      case Kind::atom:
        v = atom_bits[slot_[i]];
        break;
      case Kind::conj:
        v = out[ct_->index_of(store.lhs(f))] & out[ct_->index_of(store.rhs(f))];
        break;
      case Kind::disj: {
        const std::uint64_t a = out[ct_->index_of(store.lhs(f))];
        v = slot_[i] == kNoSlot ? a : a | out[ct_->index_of(store.rhs(f))] | override_bits[slot_[i]];
        break;
      }
      case Kind::imp: {
        if (slot_[i] == kNoSlot) {
          v = kAll;
          break;
        }
        const std::uint64_t a = out[ct_->index_of(store.lhs(f))];
        v = out[ct_->index_of(store.rhs(f))] | (~a & override_bits[slot_[i]]);
        break;
      }
      case Kind::forall:
        if (slot_[i] == kNoSlot) {
          v = out[ct_->index_of(store.body(f))];
        } else {
          v = override_bits[slot_[i]];
          for (std::uint32_t y : ct_->sub(i)) v &= out[y];
        }
        break;
      case Kind::exists:
        if (slot_[i] == kNoSlot) {
          v = out[ct_->index_of(store.body(f))];
        } else {
          v = override_bits[slot_[i]];
          for (std::uint32_t y : ct_->sub(i)) v |= out[y];
        }
        break;
    }
    out[i] = v;
  }
}

GroundAtom ground_atom(const FormulaStore& store, FormulaId atom) {
  const auto args = store.args(atom);
  return GroundAtom{store.relation_of(atom), std::vector<TermId>(args.begin(), args.end())};
}

std::vector<bool> Evaluator::evaluate(const StandardModel& m, const OverrideFn& o) const {
  const FormulaStore& store = ct_->store();
  std::vector<std::uint64_t> atom_bits(atoms_.size()), override_bits(overrides_.size()), out(ct_->size());
  for (std::size_t j = 0; j < atoms_.size(); ++j)
    atom_bits[j] = m.holds(ground_atom(store, ct_->formula(atoms_[j]))) ? 1 : 0;
  for (std::size_t j = 0; j < overrides_.size(); ++j) override_bits[j] = o.at(ct_->formula(overrides_[j])) ? 1 : 0;
  evaluate(atom_bits, override_bits, out);
  std::vector<bool> result(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) result[i] = (out[i] & 1) != 0;
  return result;
}

bool o_models(const StandardModel& m, const OverrideFn& o, FormulaId x, const ClosureTable& ct) {
  const std::uint32_t idx = ct.index_of(x);
  if (idx == ClosureTable::npos) throw Error("o_models: " + render(ct.store(), x) + " is not in the closure");
  return Evaluator(ct).evaluate(m, o)[idx];
}

bool semantic_yields_bruteforce(FormulaStore& store, std::span<const FormulaId> hyps, FormulaId query,
                                unsigned cap_exponent) {
  std::vector<FormulaId> s(hyps.begin(), hyps.end());
  s.push_back(query);
  const ClosureTable ct = ClosureTable::build(store, s);
  const std::uint64_t exponent = oracle_exponent(ct);
  if (exponent > cap_exponent)
    throw TooLarge("brute-force search space 2^" + std::to_string(exponent) + " exceeds the cap 2^" +
                   std::to_string(cap_exponent));

  const Evaluator ev(ct);
  const std::size_t na = ev.atoms().size(), no = ev.overrides().size();
  const unsigned k = static_cast<unsigned>(na + no);
  std::vector<std::uint64_t> atom_bits(na), override_bits(no), out(ct.size());
  std::vector<std::uint32_t> hyp_idx;
  for (FormulaId h : hyps) hyp_idx.push_back(ct.index_of(h));
  const std::uint32_t q = ct.index_of(query);

  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t base = 0; base < total; base += 64) {
    auto bit = [&](unsigned j) -> std::uint64_t {
      if (j < 6) return kLanePattern[j];
      return (base >> j) & 1 ? kAll : 0;
    };
    for (unsigned j = 0; j < na; ++j) atom_bits[j] = bit(j);
    for (unsigned j = 0; j < no; ++j) override_bits[j] = bit(static_cast<unsigned>(na) + j);
    ev.evaluate(atom_bits, override_bits, out);
    std::uint64_t live = total - base >= 64 ? kAll : (std::uint64_t{1} << (total - base)) - 1;
    for (std::uint32_t h : hyp_idx) live &= out[h];
    if (live & ~out[q]) return false;
  }
  return true;
}

Countermodel countermodel(std::span<const FormulaId> hyps, FormulaId query, const SaturationState& state,
                          const ClosureTable& ct) {
  const FormulaStore& store = ct.store();
  if (!state.complete) throw Error("countermodel: saturation did not reach its fixpoint");
  if (state.bot_flag) throw Error("countermodel: the hypotheses derive false");
  if (state.variant != Variant::qpl && !(state.variant == Variant::pfqpl && quantifier_free(ct)))
    throw Error("countermodel: the standard semantics matches only qpl and quantifier-free pfqpl");
  const std::uint32_t q = ct.index_of(query);
  if (q == ClosureTable::npos || state.derived.size() != ct.size())
    throw Error("countermodel: state and closure do not match the query");
  if (state.is_derived(q)) throw Error("countermodel: the query is derivable");

  Countermodel cm;
  cm.model.universe = ct.params();
  cm.model.relations = closure_relations(ct);
  for (std::uint32_t i = 0; i < ct.size(); ++i) {
    const FormulaId f = ct.formula(i);
    if (store.kind(f) == Kind::atom && state.is_derived(i)) cm.model.true_atoms.insert(ground_atom(store, f));
    if (in_override_domain(store, f)) cm.override_fn.assignment.emplace(f, state.is_derived(i));
  }

  const std::vector<bool> value = Evaluator(ct).evaluate(cm.model, cm.override_fn);
  for (std::uint32_t i = 0; i < ct.size(); ++i) {
    if (value[i] != state.is_derived(i))
      throw InternalError("countermodel: evaluation of " + render(store, ct.formula(i)) +
                          " disagrees with derivability");
  }
  for (FormulaId h : hyps)
    if (!value[ct.index_of(h)]) throw InternalError("countermodel: a hypothesis is not satisfied");
  return cm;
}

}  // namespace qpl
