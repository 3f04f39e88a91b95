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

#ifndef QPL_ALGEBRA_HPP_
#define QPL_ALGEBRA_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "qpl/syntax.hpp"

namespace qpl {

/// Terms over generators, 0, join (+) and weak pseudocomplement (*).
/// Immutable; subterms are shared.
class InfonTerm {
 public:
  enum class Op { zero, gen, join, pcomp };

  static InfonTerm zero();
  static InfonTerm gen(std::string name);
  static InfonTerm join(InfonTerm l, InfonTerm r);
  static InfonTerm pcomp(InfonTerm l, InfonTerm r);  // l * r

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const InfonTerm& lhs() const { return *node_->l; }
  const InfonTerm& rhs() const { return *node_->r; }
  std::size_t node_count() const;

 private:
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const InfonTerm> l, r;
  };
  explicit InfonTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Fully parenthesised except for generators and 0.
std::string to_string(const InfonTerm& t);

/// term := '0' | ident | term '+' term | term '*' term | '(' term ')'.
/// '*' binds tighter and groups to the right; '+' groups to the left.
InfonTerm parse_term(std::string_view text);

/// 0 to true, generators to nullary atoms, join to &, pcomp to ->.
FormulaId term_to_formula(FormulaStore& store, const InfonTerm& t);

/// s >= t in the free algebra, decided by entailment in the original calculus.
bool term_geq(const InfonTerm& s, const InfonTerm& t);
bool term_equal(const InfonTerm& s, const InfonTerm& t);

/// Random term with at most `max_nodes` nodes over generators
/// g0 .. g<generators-1>.
InfonTerm random_term(std::uint64_t seed, std::size_t max_nodes, std::size_t generators);

}  // namespace qpl

#endif  // QPL_ALGEBRA_HPP_
