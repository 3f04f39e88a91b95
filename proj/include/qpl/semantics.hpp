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

#ifndef QPL_SEMANTICS_HPP_
#define QPL_SEMANTICS_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "qpl/closure.hpp"
#include "qpl/engine.hpp"
#include "qpl/syntax.hpp"

namespace qpl {

/// Thrown when an instance is too large for exhaustive enumeration.
class TooLarge : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

inline constexpr unsigned kDefaultOracleCap = 24;

struct GroundAtom {
  RelationId relation;
  std::vector<TermId> args;

  auto operator<=>(const GroundAtom&) const = default;
};

/// A structure whose universe is P, each parameter naming itself.
struct StandardModel {
  ParamSet universe;
  std::vector<RelationId> relations;  // those occurring in S
  std::set<GroundAtom> true_atoms;

  bool holds(const GroundAtom& a) const { return true_atoms.contains(a); }
};

/// Truth values for the override domain of a closure.
struct OverrideFn {
  std::map<FormulaId, bool> assignment;

  bool at(FormulaId f) const;
};

/// Closure entries A|B and A->B with A != B, and quantifications whose
/// variable occurs free in the body, in closure order.
std::vector<FormulaId> override_domain(const ClosureTable& ct);

/// Relation symbols occurring in the closure sources, by id.
std::vector<RelationId> closure_relations(const ClosureTable& ct);

/// Sum over relations R of |P|^arity(R), plus the override domain size.
/// This is the exponent of the brute-force search space.
std::uint64_t oracle_exponent(const ClosureTable& ct);

/// Evaluates every closure entry under many (model, override) pairs at once.
///
/// Lane i of a 64-bit word is one interpretation. Inputs are the truth
/// values of the closure's atoms and of its override domain; the outputs are
/// indexed by closure position.
class Evaluator {
 public:
  explicit Evaluator(const ClosureTable& ct);

  const ClosureTable& closure() const { return *ct_; }
  /// Closure indices of atomic entries.
  std::span<const std::uint32_t> atoms() const { return atoms_; }
  /// Closure indices of the override domain.
  std::span<const std::uint32_t> overrides() const { return overrides_; }

  void evaluate(std::span<const std::uint64_t> atom_bits, std::span<const std::uint64_t> override_bits,
                std::span<std::uint64_t> out) const;

  /// Single interpretation; result indexed by closure position.
  std::vector<bool> evaluate(const StandardModel& m, const OverrideFn& o) const;

 private:
  const ClosureTable* ct_;
  std::vector<std::uint32_t> order_;  // children before parents
  std::vector<std::uint32_t> atoms_;
  std::vector<std::uint32_t> overrides_;
  std::vector<std::uint32_t> slot_;  // atom or override slot per closure index
};

GroundAtom ground_atom(const FormulaStore& store, FormulaId atom);

/// M |=_O x. Throws Error when x lies outside the closure.
bool o_models(const StandardModel& m, const OverrideFn& o, FormulaId x, const ClosureTable& ct);

/// Exhaustive check that every (standard model, override) pair satisfying
/// all hypotheses satisfies the query. Throws TooLarge past `cap_exponent`.
bool semantic_yields_bruteforce(FormulaStore& store, std::span<const FormulaId> hyps, FormulaId query,
                                unsigned cap_exponent = kDefaultOracleCap);

struct Countermodel {
  StandardModel model;
  OverrideFn override_fn;
};

/// Builds the canonical countermodel from a complete, consistent fixpoint in
/// which `query` is not derived: atoms and override values are true exactly
/// when derived. Verifies that evaluation agrees with derivability on the
/// whole closure and throws InternalError otherwise. Only the qpl variant
/// and quantifier-free pfqpl instances are accepted.
Countermodel countermodel(std::span<const FormulaId> hyps, FormulaId query, const SaturationState& state,
                          const ClosureTable& ct);

}  // namespace qpl

#endif  // QPL_SEMANTICS_HPP_
