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

#ifndef QPL_ENGINE_HPP_
#define QPL_ENGINE_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qpl/calculus.hpp"
#include "qpl/closure.hpp"
#include "qpl/syntax.hpp"

namespace qpl {

/// One rule instance over closure indices: premises => conclusion.
struct CompiledInstance {
  RuleName rule;
  std::uint8_t arity = 0;
  std::array<std::uint32_t, 2> premises{};
  std::uint32_t conclusion = 0;
};

/// Every rule instance of a variant whose premises and conclusion lie in a
/// closure, indexed by premise for counter-based firing.
class RuleTable {
 public:
  static constexpr std::uint32_t npos = ClosureTable::npos;

  Variant variant() const { return variant_; }
  std::span<const CompiledInstance> instances() const { return instances_; }
  /// Instances having `index` as a premise, once per premise slot.
  std::span<const std::uint32_t> watchers(std::uint32_t index) const {
    return std::span<const std::uint32_t>(watch_data_).subspan(watch_offsets_[index],
                                                               watch_offsets_[index + 1] - watch_offsets_[index]);
  }
  /// Closure entries that are axioms of the variant, in closure order.
  std::span<const std::uint32_t> axiom_seeds() const { return axiom_seeds_; }
  /// Closure index of `false` when BotE is available and `false` is in the
  /// closure; npos otherwise.
  std::uint32_t bottom() const { return bottom_; }

 private:
  friend RuleTable compile_rules(const ClosureTable& ct, Variant variant);

  Variant variant_ = Variant::qpl;
  std::vector<CompiledInstance> instances_;
  std::vector<std::uint32_t> watch_offsets_;
  std::vector<std::uint32_t> watch_data_;
  std::vector<std::uint32_t> axiom_seeds_;
  std::uint32_t bottom_ = npos;
};

RuleTable compile_rules(const ClosureTable& ct, Variant variant);

enum class Origin : std::uint8_t { none, hypothesis, axiom, rule };

/// How a closure entry first became derived.
struct Provenance {
  Origin origin = Origin::none;
  RuleName rule = RuleName::TopI;
  std::uint8_t arity = 0;
  std::array<std::uint32_t, 2> premises{};
};

struct SaturationStats {
  std::size_t universe_size = 0;
  std::size_t instance_count = 0;
  std::size_t instances_fired = 0;
  std::size_t agenda_pops = 0;
  std::size_t derived_count = 0;
};

struct SaturationState {
  Variant variant = Variant::qpl;
  std::vector<std::uint8_t> derived;
  std::vector<Provenance> provenance;
  bool bot_flag = false;
  /// True when the least fixpoint was reached (no early stop).
  bool complete = false;
  SaturationStats stats;

  bool is_derived(std::uint32_t index) const { return index < derived.size() && derived[index]; }
};

/// Forward saturation with a FIFO agenda. Hypotheses seed first (input order),
/// then axiom seeds (closure order); the first derivation of an entry fixes
/// its provenance. With `stop_at`, returns as soon as it is derived.
SaturationState saturate(const ClosureTable& ct, const RuleTable& rules, std::span<const FormulaId> hyps,
                         std::optional<FormulaId> stop_at = std::nullopt);

/// Rebuilds a derivation DAG of `target` from provenance; node ids are
/// assigned in post-order so the root is the last node.
Derivation extract_proof(const SaturationState& state, const ClosureTable& ct, FormulaId target);

/// Formulas X -> X occurring as subformulas of hyps and queries, first
/// occurrence order, no duplicates.
std::vector<FormulaId> local_axioms(const FormulaStore& store, std::span<const FormulaId> hyps,
                                    std::span<const FormulaId> queries);

struct EngineOptions {
  std::size_t closure_cap = kDefaultClosureCap;
};

struct Verdict {
  bool entailed = false;
  std::optional<Derivation> proof;
  SaturationStats stats;
  // Kept so a countermodel can be built for a negative verdict.
  std::shared_ptr<const ClosureTable> closure;
  std::shared_ptr<const SaturationState> state;
};

Verdict entails(FormulaStore& store, std::span<const FormulaId> hyps, FormulaId query, Variant variant,
                const EngineOptions& options = {});

/// One closure and one fixpoint for all queries.
std::vector<bool> multi_entails(FormulaStore& store, std::span<const FormulaId> hyps,
                                std::span<const FormulaId> queries, Variant variant,
                                const EngineOptions& options = {});

}  // namespace qpl

#endif  // QPL_ENGINE_HPP_
