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

#ifndef QPL_CALCULUS_HPP_
#define QPL_CALCULUS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "qpl/syntax.hpp"

namespace qpl {

/// Calculus variants, each extending the previous one.
///   original: TopI, AndI, AndE_L/R, ImpI, ImpE
///   l1:       + OrI_L/R and OrE on A|A
///   l2:       + BotE
///   pfqpl:    + axiom schema A -> A
///   qpl:      + vacuous ForallI, ForallE, ExistsI, vacuous ExistsE
enum class Variant { original, l1, l2, pfqpl, qpl };

std::string_view to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);

enum class RuleName {
  TopI,
  AndI,
  AndE_L,
  AndE_R,
  OrI_L,
  OrI_R,
  OrE,
  ImpI,
  ImpAx,
  ImpE,
  BotE,
  ForallI,
  ForallE,
  ExistsI,
  ExistsE,
};

inline constexpr RuleName kAllRules[] = {
    RuleName::TopI,  RuleName::AndI,  RuleName::AndE_L,  RuleName::AndE_R,  RuleName::OrI_L,
    RuleName::OrI_R, RuleName::OrE,   RuleName::ImpI,    RuleName::ImpAx,   RuleName::ImpE,
    RuleName::BotE,  RuleName::ForallI, RuleName::ForallE, RuleName::ExistsI, RuleName::ExistsE,
};

std::string_view to_string(RuleName r);
std::optional<RuleName> rule_from_string(std::string_view name);

/// First variant in which the rule is available.
Variant introduced_in(RuleName r);
inline bool available(Variant v, RuleName r) { return introduced_in(r) <= v; }

struct RuleInstance {
  RuleName name;
  std::vector<FormulaId> premises;
  FormulaId conclusion;
};

struct RejectReason {
  enum class Kind { unknown_rule, shape_mismatch, side_condition, not_hypothesis, not_axiom };
  Kind kind;
  std::string message;
};

std::string_view to_string(RejectReason::Kind k);

using MatchResult = std::variant<RuleInstance, RejectReason>;

/// Accepts iff (premises, conclusion) is a legal instance of rule `name` in
/// `variant`, side conditions included. Premise order is significant.
MatchResult match_rule(FormulaStore& store, Variant variant, RuleName name,
                       std::span<const FormulaId> premises, FormulaId conclusion);

/// Structural matcher: if `instance` arises from `body` by replacing every
/// free occurrence of x with one term t, returns t (an empty inner optional
/// when x has no free occurrence and instance == body). Returns nullopt when
/// no such t exists. Substitutability of t is left to the caller.
std::optional<std::optional<TermId>> match_instance(FormulaStore& store, FormulaId body, TermId x,
                                                    FormulaId instance);

/// True iff `f` is an axiom of the variant (true, or A -> A from pfqpl on).
bool is_axiom(const FormulaStore& store, Variant variant, FormulaId f);

enum class NodeKind { axiom, hypothesis, rule };

std::string_view to_string(NodeKind k);

struct DerivationNode {
  int id = 0;
  FormulaId label;
  NodeKind kind = NodeKind::rule;
  std::optional<RuleName> rule;
  std::vector<int> parents;  // premises, in rule order
};

/// Labelled derivation. Shared subderivations are stored once (a DAG); the
/// tree of the definition is its unfolding.
struct Derivation {
  std::vector<DerivationNode> nodes;
  int root = 0;

  const DerivationNode* find(int id) const;
};

struct NodeReport {
  int id = 0;
  bool ok = true;
  std::optional<RejectReason> reason;
};

struct CheckReport {
  bool ok = false;
  /// Set for cycles, dangling or duplicate ids and a missing root; the
  /// per-node reports are empty in that case.
  std::optional<std::string> structural_error;
  std::optional<std::string> conclusion_error;
  std::vector<NodeReport> nodes;

  std::string summary() const;
};

CheckReport check_derivation(FormulaStore& store, const Derivation& d, Variant variant,
                             std::span<const FormulaId> hyps,
                             std::optional<FormulaId> expected_conclusion = std::nullopt);

/// Number of nodes in the tree unfolding of `d`; throws ResourceLimit past `cap`.
std::size_t tree_size(const Derivation& d, std::size_t cap);

/// Materialises the tree unfolding (node ids renumbered in post-order).
Derivation expand_tree(const Derivation& d, std::size_t cap);

}  // namespace qpl

#endif  // QPL_CALCULUS_HPP_
