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

#ifndef QPL_GENERATORS_HPP_
#define QPL_GENERATORS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpl/calculus.hpp"
#include "qpl/syntax.hpp"

namespace qpl {

// ---------------------------------------------------------------------------
// Two-register machines

struct Inc {
  int reg = 1;
  int next = 0;
};

struct Dec {
  int reg = 1;
  int if_zero = 0;
  int if_nonzero = 0;
};

using Instruction = std::variant<Inc, Dec>;

/// States 0..k; 0 is initial and 1 is the only halting state. Every other
/// state carries exactly one instruction.
class TwoRegisterMachine {
 public:
  static constexpr int kInitial = 0;
  static constexpr int kHalt = 1;

  /// Throws Error when an instruction is missing, targets an unknown state,
  /// names a register other than 1 or 2, or is attached to the halting state.
  explicit TwoRegisterMachine(std::map<int, Instruction> program);

  int state_count() const { return states_; }
  const Instruction& instruction(int state) const { return program_.at(state); }
  const std::map<int, Instruction>& program() const { return program_; }

 private:
  std::map<int, Instruction> program_;
  int states_ = 2;
};

struct Configuration {
  int state = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;

  auto operator<=>(const Configuration&) const = default;
};

struct SimulationResult {
  bool halts = false;
  std::uint64_t steps = 0;
  Configuration final;
};

/// Runs from (0, 0, 0) for at most `max_steps` steps.
SimulationResult simulate(const TwoRegisterMachine& m, std::uint64_t max_steps);

/// Parses `state <i>: inc <r> -> <j>` and
/// `state <i>: dec <r> zero-> <j> else-> <l>` lines; `#` starts a comment.
TwoRegisterMachine parse_machine(std::string_view text);

std::string numeral(std::uint64_t k);  // the constant naming k: n<k>

struct MachineEncoding {
  FormulaId successor;  // forall x. exists x'. S(x, x')
  FormulaId start;      // K0(n0, n0)
  FormulaId step;       // forall x x' y. S(x, x') -> (delta_0 & ...)
  FormulaId phi;        // successor & start & step
};

MachineEncoding encode_phi(FormulaStore& store, const TwoRegisterMachine& m);

struct Instance {
  std::vector<FormulaId> hyps;
  std::vector<FormulaId> queries;
};

/// Hypotheses: start, step, S(n0, n1), ..., S(n<t-1>, n<t>).
/// Query: exists x. exists y. K1(x, y).
Instance bounded_halting_instance(FormulaStore& store, const TwoRegisterMachine& m, std::uint64_t t);

/// Hypotheses p0, p0 -> p1, ..., p<n-1> -> p<n>; query p<n>.
Instance implication_chain(FormulaStore& store, std::size_t n);

// ---------------------------------------------------------------------------
// Universal Horn clauses

struct HornAtom {
  std::string relation;
  std::vector<std::string> args;

  auto operator<=>(const HornAtom&) const = default;
};

/// forall bound_vars. A1 -> (A2 -> ... -> (Am -> B)); B absent means false.
struct HornClause {
  std::vector<std::string> bound_vars;
  std::vector<HornAtom> antecedents;
  std::optional<HornAtom> consequent;
};

FormulaId to_formula(FormulaStore& store, const HornClause& clause);

/// Constants occurring in the clauses, or the fixed constant when none does.
std::vector<std::string> horn_params(const std::vector<HornClause>& clauses);

/// Classical forward chaining over all groundings of the clauses with
/// `params`; true iff false becomes derivable.
bool classical_horn_bottom(const std::vector<HornClause>& clauses, const std::vector<std::string>& params);

struct HornParams {
  std::size_t clauses = 3;
  std::size_t relations = 2;
  std::size_t constants = 2;
  std::size_t max_antecedents = 2;
  std::size_t max_quantifiers = 1;  // 0 gives propositional clauses
};

/// Relations P<i> are nullary for even i and unary for odd i (unary only
/// when quantifiers are allowed); constants c<i>, bound variables x<i>.
std::vector<HornClause> random_horn(std::uint64_t seed, const HornParams& params);

struct InstanceParams {
  std::size_t hyps = 3;
  std::size_t queries = 1;
  unsigned max_depth = 3;
  std::size_t max_quantifiers = 2;  // per formula
  std::size_t nullary = 4;          // p0, p1, ...
  std::size_t unary = 1;            // R0, R1, ...
  std::size_t constants = 1;        // c0, c1, ...
  bool free_variable = false;       // occasionally use the free variable z
};

/// Random formulas over the connectives of `variant`.
Instance random_instance(FormulaStore& store, std::uint64_t seed, const InstanceParams& params, Variant variant);

}  // namespace qpl

#endif  // QPL_GENERATORS_HPP_
