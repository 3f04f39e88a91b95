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

#ifndef QPL_CLOSURE_HPP_
#define QPL_CLOSURE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qpl/syntax.hpp"

namespace qpl {

inline constexpr std::size_t kDefaultClosureCap = 10'000'000;

struct ClosureStats {
  std::size_t universe_size = 0;
  std::size_t param_count = 0;
  unsigned depth = 0;         // max quantifier depth over S
  std::uint64_t length = 0;   // total symbol length of S
  std::uint64_t size_bound = 0;  // length * param_count^depth, saturating
};

/// The P-subformulas of a finite set S, P = parameters_star(S).
///
/// Entries are addressed by a dense index in discovery order (S first, then
/// breadth-first expansion). For every quantified entry qx B(x) the table
/// records Sub(X): the entries B(p), p in P, with clashing p skipped.
/// Immutable after build; share it freely once built.
class ClosureTable {
 public:
  static constexpr std::uint32_t npos = Id<void>::kInvalid;

  static ClosureTable build(FormulaStore& store, std::span<const FormulaId> s,
                            std::size_t cap = kDefaultClosureCap);

  const FormulaStore& store() const { return *store_; }
  std::span<const FormulaId> universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  FormulaId formula(std::uint32_t index) const { return universe_[index]; }

  /// Dense index of `f`, or npos when `f` is not in the closure.
  std::uint32_t index_of(FormulaId f) const {
    return f.value < index_.size() ? index_[f.value] : npos;
  }
  bool contains(FormulaId f) const { return index_of(f) != npos; }

  /// Sub(X) as dense indices; empty for non-quantified entries.
  std::span<const std::uint32_t> sub(std::uint32_t index) const {
    return std::span<const std::uint32_t>(sub_data_).subspan(sub_offsets_[index],
                                                             sub_offsets_[index + 1] - sub_offsets_[index]);
  }

  /// S with duplicates removed, in input order.
  std::span<const FormulaId> sources() const { return sources_; }
  const ParamSet& params() const { return params_; }
  const ClosureStats& stats() const { return stats_; }

 private:
  const FormulaStore* store_ = nullptr;
  std::vector<FormulaId> sources_;
  std::vector<FormulaId> universe_;
  std::vector<std::uint32_t> index_;
  std::vector<std::uint32_t> sub_offsets_;
  std::vector<std::uint32_t> sub_data_;
  ParamSet params_;
  ClosureStats stats_;
};

/// len * base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_bound(std::uint64_t len, std::uint64_t base, unsigned exp);

}  // namespace qpl

#endif  // QPL_CLOSURE_HPP_
