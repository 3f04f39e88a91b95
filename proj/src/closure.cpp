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

#include "qpl/closure.hpp"

namespace qpl {

std::uint64_t saturating_bound(std::uint64_t len, std::uint64_t base, unsigned exp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = len;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && acc > kMax / base) return kMax;
    acc *= base;
  }
  return acc;
}

ClosureTable ClosureTable::build(FormulaStore& store, std::span<const FormulaId> s, std::size_t cap) {
  ClosureTable ct;
  ct.store_ = &store;
  ct.params_ = parameters_star(store, s);

  auto add = [&](FormulaId f) -> std::uint32_t {
    if (f.value >= ct.index_.size()) ct.index_.resize(std::max<std::size_t>(store.size(), f.value + 1), npos);
    std::uint32_t& slot = ct.index_[f.value];
    if (slot == npos) {
      if (ct.universe_.size() >= cap)
        throw ResourceLimit("closure exceeds the cap of " + std::to_string(cap) + " entries");
      slot = static_cast<std::uint32_t>(ct.universe_.size());
      ct.universe_.push_back(f);
    }
    return slot;
  };

  ct.index_.assign(store.size(), npos);
  for (FormulaId f : s) {
    if (f.value < ct.index_.size() && ct.index_[f.value] != npos) continue;
    add(f);
    ct.sources_.push_back(f);
    ct.stats_.length += store.length(f);
    ct.stats_.depth = std::max(ct.stats_.depth, store.quantifier_depth(f));
  }

  ct.sub_offsets_.push_back(0);
  for (std::size_t i = 0; i < ct.universe_.size(); ++i) {
    const FormulaId x = ct.universe_[i];
    const Kind k = store.kind(x);
    if (is_binary(k)) {
      const FormulaId l = store.lhs(x), r = store.rhs(x);
      add(l);
      add(r);
    } else if (is_quantifier(k)) {
      const TermId var = store.bound_var(x);
      const FormulaId body = store.body(x);
      const std::size_t first = ct.sub_data_.size();
      for (TermId p : ct.params_.elements) {
        auto inst = substitute(store, body, var, p);
        if (!inst) continue;
        const std::uint32_t idx = add(*inst);
        if (std::find(ct.sub_data_.begin() + first, ct.sub_data_.end(), idx) == ct.sub_data_.end())
          ct.sub_data_.push_back(idx);
      }
    }
    ct.sub_offsets_.push_back(static_cast<std::uint32_t>(ct.sub_data_.size()));
  }

  ct.stats_.universe_size = ct.universe_.size();
  ct.stats_.param_count = ct.params_.size();
  ct.stats_.size_bound = saturating_bound(ct.stats_.length, ct.params_.size(), ct.stats_.depth);
  return ct;
}

}  // namespace qpl
