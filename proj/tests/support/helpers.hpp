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

#ifndef QPL_TESTS_SUPPORT_HELPERS_HPP_
#define QPL_TESTS_SUPPORT_HELPERS_HPP_

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "qpl/syntax.hpp"

namespace qpl::test {

/// Parses formulas into one store with a fixed list of free variables.
class Parser {
 public:
  explicit Parser(FormulaStore& store, std::vector<std::string> vars = {}) : store_(store), vars_(std::move(vars)) {}

  FormulaId operator()(std::string_view text) const { return parse_formula(store_, text, vars_); }
  std::vector<FormulaId> operator()(std::initializer_list<std::string_view> texts) const {
    std::vector<FormulaId> out;
    for (auto t : texts) out.push_back((*this)(t));
    return out;
  }

 private:
  FormulaStore& store_;
  std::vector<std::string> vars_;
};

}  // namespace qpl::test

#endif  // QPL_TESTS_SUPPORT_HELPERS_HPP_
