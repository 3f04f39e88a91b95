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

#ifndef QPL_SYNTAX_HPP_
#define QPL_SYNTAX_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qpl {

// Error hierarchy shared by every module.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at " + std::to_string(line) + ":" + std::to_string(column)),
        message_(message),
        line_(line),
        column_(column) {}
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Relation used with two different arities, identifier used both as a
// variable and as a constant, or a reserved identifier in user input.
class NameError : public Error {
 public:
  using Error::Error;
};

// A configured cap (closure entries, oracle exponent, tree expansion) was hit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; always a bug, never a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

template <class Tag>
struct Id {
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value = kInvalid;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr bool valid() const { return value != kInvalid; }
  friend constexpr auto operator<=>(Id, Id) = default;
};

using TermId = Id<struct TermTag>;
using FormulaId = Id<struct FormulaTag>;
using RelationId = Id<struct RelationTag>;

enum class TermKind : std::uint8_t { variable, constant };

enum class Kind : std::uint8_t { top, bot, atom, conj, disj, imp, forall, exists };

inline bool is_binary(Kind k) { return k == Kind::conj || k == Kind::disj || k == Kind::imp; }
inline bool is_quantifier(Kind k) { return k == Kind::forall || k == Kind::exists; }

/// Reserved identifier of the constant added to constant-free parameter sets.
inline constexpr std::string_view kFixedConstant = "_0";

/// True iff `name` belongs to the identifier class `[A-Za-z][A-Za-z0-9_']*`.
bool is_identifier(std::string_view name);

/// Session-local hash-consing store for terms, relation symbols and formulas.
///
/// Structurally equal formulas receive the same FormulaId, so equality and set
/// membership are id comparisons. A store is not synchronized: confine it to
/// one thread, or build everything up front and share it read-only.
///
/// Within one store an identifier names either variables or constants, never
/// both, which keeps rendered text unambiguous given the free-variable list.
class FormulaStore {
 public:
  FormulaStore();
  FormulaStore(const FormulaStore&) = delete;
  FormulaStore& operator=(const FormulaStore&) = delete;
  FormulaStore(FormulaStore&&) noexcept = default;
  FormulaStore& operator=(FormulaStore&&) noexcept = default;

  // Terms. Both validate the identifier class and reject the reserved `_` prefix.
  TermId variable(std::string_view name);
  TermId constant(std::string_view name);
  TermId fixed_constant();
  std::optional<TermId> find_term(std::string_view name) const;
  const std::string& name(TermId t) const { return terms_[t.value].name; }
  TermKind term_kind(TermId t) const { return terms_[t.value].kind; }
  bool is_variable(TermId t) const { return term_kind(t) == TermKind::variable; }
  std::size_t term_count() const { return terms_.size(); }

  // Relation symbols carry the arity of their first use.
  RelationId relation(std::string_view name, std::size_t arity);
  std::optional<RelationId> find_relation(std::string_view name) const;
  const std::string& name(RelationId r) const { return relations_[r.value].name; }
  std::size_t arity(RelationId r) const { return relations_[r.value].arity; }

  // Formula constructors; each returns the unique id of the structure.
  FormulaId top();
  FormulaId bot();
  FormulaId atom(RelationId r, std::span<const TermId> args);
  FormulaId atom(std::string_view relation_name, std::span<const TermId> args);
  FormulaId conj(FormulaId l, FormulaId r);
  FormulaId disj(FormulaId l, FormulaId r);
  FormulaId imp(FormulaId l, FormulaId r);
  FormulaId neg(FormulaId a) { return imp(a, bot()); }
  FormulaId forall(TermId var, FormulaId body);
  FormulaId exists(TermId var, FormulaId body);
  FormulaId binary(Kind k, FormulaId l, FormulaId r);
  FormulaId quantified(Kind k, TermId var, FormulaId body);

  Kind kind(FormulaId f) const { return nodes_[f.value].kind; }
  FormulaId lhs(FormulaId f) const { return FormulaId(nodes_[f.value].a); }
  FormulaId rhs(FormulaId f) const { return FormulaId(nodes_[f.value].b); }
  TermId bound_var(FormulaId f) const { return TermId(nodes_[f.value].a); }
  FormulaId body(FormulaId f) const { return FormulaId(nodes_[f.value].b); }
  RelationId relation_of(FormulaId f) const { return RelationId(nodes_[f.value].a); }
  std::span<const TermId> args(FormulaId f) const;

  /// Sorted variables with a free occurrence.
  std::span<const TermId> free_vars(FormulaId f) const { return nodes_[f.value].free_vars; }
  /// Sorted constants occurring anywhere in the formula.
  std::span<const TermId> constants(FormulaId f) const { return nodes_[f.value].constants; }
  bool has_free(FormulaId f, TermId x) const;
  unsigned quantifier_depth(FormulaId f) const { return nodes_[f.value].depth; }
  /// Symbol count of the fully parenthesised rendering (connectives,
  /// parentheses, commas, quantifier keyword, bound variable and dot).
  std::uint64_t length(FormulaId f) const { return nodes_[f.value].length; }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct TermEntry {
    std::string name;
    TermKind kind;
  };
  struct RelationEntry {
    std::string name;
    std::size_t arity;
  };
  struct Node {
    Kind kind;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t arity = 0;
    unsigned depth = 0;
    std::uint64_t length = 1;
    std::vector<TermId> free_vars;
    std::vector<TermId> constants;
  };

  TermId make_term(std::string_view name, TermKind kind, bool user);
  FormulaId intern(Node&& node, std::span<const TermId> args);
  std::uint64_t hash_of(Kind kind, std::uint32_t a, std::uint32_t b,
                        std::span<const TermId> args) const;
  bool same(FormulaId f, Kind kind, std::uint32_t a, std::uint32_t b,
            std::span<const TermId> args) const;
  void grow_table();

  std::vector<TermEntry> terms_;
  std::unordered_map<std::string, TermId> term_index_;
  std::vector<RelationEntry> relations_;
  std::unordered_map<std::string, RelationId> relation_index_;
  std::vector<Node> nodes_;
  std::vector<TermId> arg_pool_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> table_;  // open addressing over node ids
};

/// Replaces every free occurrence of `x` in `a` with `t`. Returns nullopt on
/// a clash of variables (`t` is a variable and a replaced occurrence sits in
/// the scope of a quantifier binding `t`). Callers skip clashing instances;
/// there is no renaming of bound variables.
std::optional<FormulaId> substitute(FormulaStore& store, FormulaId a, TermId x, TermId t);

std::vector<TermId> free_vars(const FormulaStore& store, FormulaId a);

/// Subformulas where quantifier bodies are taken literally (t = x).
std::vector<FormulaId> literal_subformulas(const FormulaStore& store, FormulaId a);

unsigned quantifier_depth(const FormulaStore& store, FormulaId a);

struct ParamSet {
  std::vector<TermId> elements;  // sorted by name
  bool contains_fixed = false;

  bool contains(TermId t) const;
  std::size_t size() const { return elements.size(); }
};

/// Constants and free variables of `s`, padded with the fixed constant when
/// no constant occurs.
ParamSet parameters_star(FormulaStore& store, std::span<const FormulaId> s);

/// True iff every parameter of `a` lies in `params`.
bool is_p_formula(const FormulaStore& store, FormulaId a, const ParamSet& params);

std::string render(const FormulaStore& store, FormulaId f);

enum class ParseMode {
  user,     // rejects every `_`-prefixed identifier
  trusted,  // machine-written text: additionally accepts the fixed constant
};

/// Parses one formula. Unbound identifiers in term position are constants
/// unless listed in `declared_vars`. `~A` becomes `A -> false` and
/// `forall x y. A` becomes `forall x. forall y. A`. Throws ParseError or
/// NameError.
FormulaId parse_formula(FormulaStore& store, std::string_view text,
                        std::span<const std::string> declared_vars = {},
                        ParseMode mode = ParseMode::user);

/// Names of the variables free in any of `fs`, sorted.
std::vector<std::string> free_var_names(const FormulaStore& store, std::span<const FormulaId> fs);

}  // namespace qpl

template <class Tag>
struct std::hash<qpl::Id<Tag>> {
  std::size_t operator()(qpl::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

#endif  // QPL_SYNTAX_HPP_
