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
#include <set>
#include <unordered_set>

#include "qpl/syntax.hpp"

namespace qpl {

std::optional<FormulaId> substitute(FormulaStore& store, FormulaId a, TermId x, TermId t) {
  if (!store.has_free(a, x)) return a;
  switch (store.kind(a)) {
    case Kind::top:
    case Kind::bot:
      return a;
    case Kind::atom: {
      auto old_args = store.args(a);
      std::vector<TermId> args(old_args.begin(), old_args.end());
      std::replace(args.begin(), args.end(), x, t);
      return store.atom(store.relation_of(a), args);
    }
    case Kind::conj:
    case Kind::disj:
    case Kind::imp: {
      auto l = substitute(store, store.lhs(a), x, t);
      if (!l) return std::nullopt;
      auto r = substitute(store, store.rhs(a), x, t);
      if (!r) return std::nullopt;
      return store.binary(store.kind(a), *l, *r);
    }
    case Kind::forall:
    case Kind::exists: {
      // x is free here, so the binder differs from x and every replaced
      // occurrence below lies in its scope.
      if (store.bound_var(a) == t) return std::nullopt;
      auto b = substitute(store, store.body(a), x, t);
      if (!b) return std::nullopt;
      return store.quantified(store.kind(a), store.bound_var(a), *b);
    }
  }
  throw InternalError("substitute: unknown formula kind");
}

std::vector<TermId> free_vars(const FormulaStore& store, FormulaId a) {
  auto fv = store.free_vars(a);
  return {fv.begin(), fv.end()};
}

std::vector<FormulaId> literal_subformulas(const FormulaStore& store, FormulaId a) {
  std::vector<FormulaId> out;
  std::unordered_set<FormulaId> seen;
  std::vector<FormulaId> stack{a};
  while (!stack.empty()) {
    FormulaId f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    out.push_back(f);
    Kind k = store.kind(f);
    if (is_binary(k)) {
      stack.push_back(store.rhs(f));
      stack.push_back(store.lhs(f));
    } else if (is_quantifier(k)) {
      stack.push_back(store.body(f));
    }
  }
  return out;
}

unsigned quantifier_depth(const FormulaStore& store, FormulaId a) { return store.quantifier_depth(a); }

bool ParamSet::contains(TermId t) const {
  return std::find(elements.begin(), elements.end(), t) != elements.end();
}

ParamSet parameters_star(FormulaStore& store, std::span<const FormulaId> s) {
  std::set<TermId> found;
  bool has_constant = false;
  for (FormulaId f : s) {
    for (TermId c : store.constants(f)) {
      found.insert(c);
      has_constant = true;
    }
    for (TermId v : store.free_vars(f)) found.insert(v);
  }
  ParamSet p;
  p.elements.assign(found.begin(), found.end());
  if (!has_constant) {
    p.elements.push_back(store.fixed_constant());
    p.contains_fixed = true;
  }
  std::sort(p.elements.begin(), p.elements.end(),
            [&](TermId l, TermId r) { return store.name(l) < store.name(r); });
  return p;
}

bool is_p_formula(const FormulaStore& store, FormulaId a, const ParamSet& params) {
  auto inside = [&](TermId t) { return params.contains(t); };
  return std::all_of(store.constants(a).begin(), store.constants(a).end(), inside) &&
         std::all_of(store.free_vars(a).begin(), store.free_vars(a).end(), inside);
}

namespace {

void render_into(const FormulaStore& store, FormulaId f, std::string& out) {
  auto operand = [&](FormulaId g) {
    Kind k = store.kind(g);
    if (is_binary(k) || is_quantifier(k)) {
      out += '(';
      render_into(store, g, out);
      out += ')';
    } else {
      render_into(store, g, out);
    }
  };
  switch (store.kind(f)) {
    case Kind::top:
      out += "true";
      return;
    case Kind::bot:
      out += "false";
      return;
    case Kind::atom: {
      out += store.name(store.relation_of(f));
      auto args = store.args(f);
      if (args.empty()) return;
      out += '(';
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += store.name(args[i]);
      }
      out += ')';
      return;
    }
    case Kind::conj:
    case Kind::disj:
    case Kind::imp: {
      const char* op = store.kind(f) == Kind::conj ? " & " : store.kind(f) == Kind::disj ? " | " : " -> ";
      operand(store.lhs(f));
      out += op;
      operand(store.rhs(f));
      return;
    }
    case Kind::forall:
    case Kind::exists:
      out += store.kind(f) == Kind::forall ? "forall " : "exists ";
      out += store.name(store.bound_var(f));
      out += ". ";
      render_into(store, store.body(f), out);
      return;
  }
}

}  // namespace

std::string render(const FormulaStore& store, FormulaId f) {
  std::string out;
  render_into(store, f, out);
  return out;
}

std::vector<std::string> free_var_names(const FormulaStore& store, std::span<const FormulaId> fs) {
  std::set<std::string> names;
  for (FormulaId f : fs)
    for (TermId v : store.free_vars(f)) names.insert(store.name(v));
  return {names.begin(), names.end()};
}

}  // namespace qpl
