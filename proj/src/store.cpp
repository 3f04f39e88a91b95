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
#include <cctype>

#include "qpl/syntax.hpp"

namespace qpl {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finaliser folded into a running hash
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (v ^ (v >> 31));
}

std::vector<TermId> merge_sorted(std::span<const TermId> x, std::span<const TermId> y) {
  std::vector<TermId> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

FormulaStore::FormulaStore() : table_(1024, Id<void>::kInvalid) {}

TermId FormulaStore::make_term(std::string_view name, TermKind kind, bool user) {
  if (user) {
    if (!name.empty() && name[0] == '_')
      throw NameError("identifier '" + std::string(name) + "' uses the reserved prefix '_'");
    if (!is_identifier(name)) throw NameError("'" + std::string(name) + "' is not an identifier");
  }
  auto it = term_index_.find(std::string(name));
  if (it != term_index_.end()) {
    if (terms_[it->second.value].kind != kind)
      throw NameError("identifier '" + std::string(name) + "' is used both as a variable and as a constant");
    return it->second;
  }
  TermId id(static_cast<std::uint32_t>(terms_.size()));
  terms_.push_back({std::string(name), kind});
  term_index_.emplace(std::string(name), id);
  return id;
}

TermId FormulaStore::variable(std::string_view name) { return make_term(name, TermKind::variable, true); }
TermId FormulaStore::constant(std::string_view name) { return make_term(name, TermKind::constant, true); }
TermId FormulaStore::fixed_constant() { return make_term(kFixedConstant, TermKind::constant, false); }

std::optional<TermId> FormulaStore::find_term(std::string_view name) const {
  auto it = term_index_.find(std::string(name));
  if (it == term_index_.end()) return std::nullopt;
  return it->second;
}

RelationId FormulaStore::relation(std::string_view name, std::size_t arity) {
  if (!name.empty() && name[0] == '_')
    throw NameError("relation '" + std::string(name) + "' uses the reserved prefix '_'");
  if (!is_identifier(name)) throw NameError("'" + std::string(name) + "' is not an identifier");
  auto it = relation_index_.find(std::string(name));
  if (it != relation_index_.end()) {
    const auto& entry = relations_[it->second.value];
    if (entry.arity != arity)
      throw NameError("relation '" + std::string(name) + "' used with arity " + std::to_string(arity) +
                      " but previously with arity " + std::to_string(entry.arity));
    return it->second;
  }
  RelationId id(static_cast<std::uint32_t>(relations_.size()));
  relations_.push_back({std::string(name), arity});
  relation_index_.emplace(std::string(name), id);
  return id;
}

std::optional<RelationId> FormulaStore::find_relation(std::string_view name) const {
  auto it = relation_index_.find(std::string(name));
  if (it == relation_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const TermId> FormulaStore::args(FormulaId f) const {
  const Node& n = nodes_[f.value];
  if (n.kind != Kind::atom || n.arity == 0) return {};
  return std::span<const TermId>(arg_pool_.data() + n.b, n.arity);
}

bool FormulaStore::has_free(FormulaId f, TermId x) const {
  auto fv = free_vars(f);
  return std::binary_search(fv.begin(), fv.end(), x);
}

std::uint64_t FormulaStore::hash_of(Kind kind, std::uint32_t a, std::uint32_t b,
                                    std::span<const TermId> args) const {
  std::uint64_t h = mix(static_cast<std::uint64_t>(kind), a);
  if (kind == Kind::atom) {
    h = mix(h, args.size());
    for (TermId t : args) h = mix(h, t.value);
  } else {
    h = mix(h, b);
  }
  return h;
}

bool FormulaStore::same(FormulaId f, Kind kind, std::uint32_t a, std::uint32_t b,
                        std::span<const TermId> args) const {
  const Node& n = nodes_[f.value];
  if (n.kind != kind || n.a != a) return false;
  if (kind != Kind::atom) return n.b == b;
  auto mine = this->args(f);
  return std::equal(mine.begin(), mine.end(), args.begin(), args.end());
}

void FormulaStore::grow_table() {
  std::vector<std::uint32_t> fresh(table_.size() * 2, Id<void>::kInvalid);
  const std::size_t mask = fresh.size() - 1;
  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    std::size_t slot = hashes_[id] & mask;
    while (fresh[slot] != Id<void>::kInvalid) slot = (slot + 1) & mask;
    fresh[slot] = id;
  }
  table_ = std::move(fresh);
}

FormulaId FormulaStore::intern(Node&& node, std::span<const TermId> args) {
  const std::uint64_t h = hash_of(node.kind, node.a, node.b, args);
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = h & mask;
  while (table_[slot] != Id<void>::kInvalid) {
    FormulaId candidate(table_[slot]);
    if (hashes_[candidate.value] == h && same(candidate, node.kind, node.a, node.b, args)) return candidate;
    slot = (slot + 1) & mask;
  }
  FormulaId id(static_cast<std::uint32_t>(nodes_.size()));
  if (node.kind == Kind::atom) {
    node.b = static_cast<std::uint32_t>(arg_pool_.size());
    node.arity = static_cast<std::uint32_t>(args.size());
    arg_pool_.insert(arg_pool_.end(), args.begin(), args.end());
  }
  nodes_.push_back(std::move(node));
  hashes_.push_back(h);
  table_[slot] = id.value;
  if (nodes_.size() * 2 > table_.size()) grow_table();
  return id;
}

FormulaId FormulaStore::top() {
  Node n;
  n.kind = Kind::top;
  return intern(std::move(n), {});
}

FormulaId FormulaStore::bot() {
  Node n;
  n.kind = Kind::bot;
  return intern(std::move(n), {});
}

FormulaId FormulaStore::atom(RelationId r, std::span<const TermId> args) {
  if (arity(r) != args.size())
    throw NameError("relation '" + name(r) + "' expects " + std::to_string(arity(r)) + " arguments, got " +
                    std::to_string(args.size()));
  Node n;
  n.kind = Kind::atom;
  n.a = r.value;
  n.length = args.empty() ? 1 : 2 * args.size() + 2;
  for (TermId t : args) {
    auto& target = is_variable(t) ? n.free_vars : n.constants;
    target.push_back(t);
  }
  std::sort(n.free_vars.begin(), n.free_vars.end());
  n.free_vars.erase(std::unique(n.free_vars.begin(), n.free_vars.end()), n.free_vars.end());
  std::sort(n.constants.begin(), n.constants.end());
  n.constants.erase(std::unique(n.constants.begin(), n.constants.end()), n.constants.end());
  return intern(std::move(n), args);
}

FormulaId FormulaStore::atom(std::string_view relation_name, std::span<const TermId> args) {
  return atom(relation(relation_name, args.size()), args);
}

FormulaId FormulaStore::binary(Kind k, FormulaId l, FormulaId r) {
  if (!is_binary(k)) throw InternalError("binary() called with a non-binary kind");
  const Node& ln = nodes_[l.value];
  const Node& rn = nodes_[r.value];
  Node n;
  n.kind = k;
  n.a = l.value;
  n.b = r.value;
  n.depth = std::max(ln.depth, rn.depth);
  n.length = ln.length + rn.length + 3;
  n.free_vars = merge_sorted(ln.free_vars, rn.free_vars);
  n.constants = merge_sorted(ln.constants, rn.constants);
  return intern(std::move(n), {});
}

FormulaId FormulaStore::quantified(Kind k, TermId var, FormulaId body) {
  if (!is_quantifier(k)) throw InternalError("quantified() called with a non-quantifier kind");
  if (!is_variable(var)) throw NameError("'" + name(var) + "' is a constant and cannot be bound");
  const Node& bn = nodes_[body.value];
  Node n;
  n.kind = k;
  n.a = var.value;
  n.b = body.value;
  n.depth = bn.depth + 1;
  n.length = bn.length + 3;
  n.free_vars = bn.free_vars;
  std::erase(n.free_vars, var);
  n.constants = bn.constants;
  return intern(std::move(n), {});
}

FormulaId FormulaStore::conj(FormulaId l, FormulaId r) { return binary(Kind::conj, l, r); }
FormulaId FormulaStore::disj(FormulaId l, FormulaId r) { return binary(Kind::disj, l, r); }
FormulaId FormulaStore::imp(FormulaId l, FormulaId r) { return binary(Kind::imp, l, r); }
FormulaId FormulaStore::forall(TermId var, FormulaId body) { return quantified(Kind::forall, var, body); }
FormulaId FormulaStore::exists(TermId var, FormulaId body) { return quantified(Kind::exists, var, body); }

}  // namespace qpl
