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
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "qpl/generators.hpp"

namespace qpl {

// ---------------------------------------------------------------------------
// Machines

TwoRegisterMachine::TwoRegisterMachine(std::map<int, Instruction> program) : program_(std::move(program)) {
  int top = kHalt;
  auto check_reg = [](int r) {
    if (r != 1 && r != 2) throw Error("machine: register must be 1 or 2, got " + std::to_string(r));
  };
  for (const auto& [state, instr] : program_) {
    if (state < 0) throw Error("machine: negative state " + std::to_string(state));
    if (state == kHalt) throw Error("machine: the halting state 1 has no instruction");
    top = std::max(top, state);
    if (const auto* inc = std::get_if<Inc>(&instr)) {
      check_reg(inc->reg);
      top = std::max(top, inc->next);
    } else {
      const auto& dec = std::get<Dec>(instr);
      check_reg(dec.reg);
      top = std::max({top, dec.if_zero, dec.if_nonzero});
    }
  }
  states_ = top + 1;
  for (int s = 0; s < states_; ++s) {
    if (s != kHalt && !program_.contains(s))
      throw Error("machine: state " + std::to_string(s) + " has no instruction");
  }
  for (const auto& [state, instr] : program_) {
    const bool bad = std::visit(
        [](const auto& i) {
          if constexpr (std::is_same_v<std::decay_t<decltype(i)>, Inc>)
            return i.next < 0;
          else
            return i.if_zero < 0 || i.if_nonzero < 0;
        },
        instr);
    if (bad) throw Error("machine: negative target in state " + std::to_string(state));
  }
}

SimulationResult simulate(const TwoRegisterMachine& m, std::uint64_t max_steps) {
  SimulationResult r;
  Configuration& c = r.final;
  while (c.state != TwoRegisterMachine::kHalt && r.steps < max_steps) {
    const Instruction& instr = m.instruction(c.state);
    if (const auto* inc = std::get_if<Inc>(&instr)) {
      ++(inc->reg == 1 ? c.r1 : c.r2);
      c.state = inc->next;
    } else {
      const auto& dec = std::get<Dec>(instr);
      std::uint64_t& reg = dec.reg == 1 ? c.r1 : c.r2;
      if (reg == 0) {
        c.state = dec.if_zero;
      } else {
        --reg;
        c.state = dec.if_nonzero;
      }
    }
    ++r.steps;
  }
  r.halts = c.state == TwoRegisterMachine::kHalt;
  return r;
}

TwoRegisterMachine parse_machine(std::string_view text) {
  static const std::regex kInc(R"(^\s*state\s+(\d+)\s*:\s*inc\s+(\d+)\s*->\s*(\d+)\s*$)");
  static const std::regex kDec(
      R"(^\s*state\s+(\d+)\s*:\s*dec\s+(\d+)\s+zero\s*->\s*(\d+)\s+else\s*->\s*(\d+)\s*$)");
  std::map<int, Instruction> program;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch mt;
    int state = 0;
    Instruction instr;
    try {
      if (std::regex_match(line, mt, kInc)) {
        state = std::stoi(mt[1]);
        instr = Inc{std::stoi(mt[2]), std::stoi(mt[3])};
      } else if (std::regex_match(line, mt, kDec)) {
        state = std::stoi(mt[1]);
        instr = Dec{std::stoi(mt[2]), std::stoi(mt[3]), std::stoi(mt[4])};
      } else {
        throw ParseError("expected 'state <i>: inc <r> -> <j>' or 'state <i>: dec <r> zero-> <j> else-> <l>'",
                         lineno, 1);
      }
    } catch (const std::out_of_range&) {
      throw ParseError("number out of range", lineno, 1);
    }
    if (!program.emplace(state, instr).second)
      throw ParseError("duplicate instruction for state " + std::to_string(state), lineno, 1);
  }
  return TwoRegisterMachine(std::move(program));
}

std::string numeral(std::uint64_t k) { return "n" + std::to_string(k); }

namespace {

std::string state_relation(int i) { return "K" + std::to_string(i); }

FormulaId fold_conj(FormulaStore& store, const std::vector<FormulaId>& parts) {
  FormulaId acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = store.conj(acc, parts[i]);
  return acc;
}

}  // namespace

MachineEncoding encode_phi(FormulaStore& store, const TwoRegisterMachine& m) {
  const TermId x = store.variable("x"), xp = store.variable("x'"), y = store.variable("y");
  const TermId zero = store.constant(numeral(0));
  auto k = [&](int i, TermId a, TermId b) {
    const TermId args[] = {a, b};
    return store.atom(state_relation(i), args);
  };
  const TermId sxx[] = {x, xp};
  const FormulaId s_atom = store.atom("S", sxx);

  std::vector<FormulaId> deltas;
  for (const auto& [i, instr] : m.program()) {
    if (const auto* inc = std::get_if<Inc>(&instr)) {
      deltas.push_back(inc->reg == 1 ? store.imp(k(i, x, y), k(inc->next, xp, y))
                                     : store.imp(k(i, y, x), k(inc->next, y, xp)));
    } else {
      const auto& dec = std::get<Dec>(instr);
      if (dec.reg == 1) {
        deltas.push_back(store.conj(store.imp(k(i, zero, y), k(dec.if_zero, zero, y)),
                                    store.imp(k(i, xp, y), k(dec.if_nonzero, x, y))));
      } else {
        deltas.push_back(store.conj(store.imp(k(i, y, zero), k(dec.if_zero, y, zero)),
                                    store.imp(k(i, y, xp), k(dec.if_nonzero, y, x))));
      }
    }
  }

  MachineEncoding e;
  e.successor = store.forall(x, store.exists(xp, s_atom));
  e.start = k(0, zero, zero);
  e.step = store.forall(x, store.forall(xp, store.forall(y, store.imp(s_atom, fold_conj(store, deltas)))));
  e.phi = store.conj(store.conj(e.successor, e.start), e.step);
  return e;
}

Instance bounded_halting_instance(FormulaStore& store, const TwoRegisterMachine& m, std::uint64_t t) {
  const MachineEncoding e = encode_phi(store, m);
  Instance inst;
  inst.hyps = {e.start, e.step};
  for (std::uint64_t i = 0; i < t; ++i) {
    const TermId args[] = {store.constant(numeral(i)), store.constant(numeral(i + 1))};
    inst.hyps.push_back(store.atom("S", args));
  }
  const TermId x = store.variable("x"), y = store.variable("y");
  const TermId xy[] = {x, y};
  inst.queries = {store.exists(x, store.exists(y, store.atom(state_relation(TwoRegisterMachine::kHalt), xy)))};
  return inst;
}

Instance implication_chain(FormulaStore& store, std::size_t n) {
  auto p = [&](std::size_t i) { return store.atom("p" + std::to_string(i), std::span<const TermId>{}); };
  Instance inst;
  inst.hyps.reserve(n + 1);
  inst.hyps.push_back(p(0));
  for (std::size_t i = 0; i < n; ++i) inst.hyps.push_back(store.imp(p(i), p(i + 1)));
  inst.queries = {p(n)};
  return inst;
}

// ---------------------------------------------------------------------------
// Horn clauses

FormulaId to_formula(FormulaStore& store, const HornClause& clause) {
  auto atom = [&](const HornAtom& a) {
    std::vector<TermId> args;
    for (const std::string& name : a.args) {
      const bool bound = std::find(clause.bound_vars.begin(), clause.bound_vars.end(), name) !=
                         clause.bound_vars.end();
      args.push_back(bound ? store.variable(name) : store.constant(name));
    }
    return store.atom(a.relation, args);
  };
  FormulaId f = clause.consequent ? atom(*clause.consequent) : store.bot();
  for (auto it = clause.antecedents.rbegin(); it != clause.antecedents.rend(); ++it) f = store.imp(atom(*it), f);
  for (auto it = clause.bound_vars.rbegin(); it != clause.bound_vars.rend(); ++it)
    f = store.forall(store.variable(*it), f);
  return f;
}

std::vector<std::string> horn_params(const std::vector<HornClause>& clauses) {
  std::set<std::string> names;
  auto scan = [&](const HornClause& c, const HornAtom& a) {
    for (const std::string& arg : a.args)
      if (std::find(c.bound_vars.begin(), c.bound_vars.end(), arg) == c.bound_vars.end()) names.insert(arg);
  };
  for (const HornClause& c : clauses) {
    for (const HornAtom& a : c.antecedents) scan(c, a);
    if (c.consequent) scan(c, *c.consequent);
  }
  if (names.empty()) return {std::string(kFixedConstant)};
  return {names.begin(), names.end()};
}

bool classical_horn_bottom(const std::vector<HornClause>& clauses, const std::vector<std::string>& params) {
  struct Ground {
    std::vector<HornAtom> body;
    std::optional<HornAtom> head;
  };
  std::vector<Ground> ground;
  for (const HornClause& c : clauses) {
    const std::size_t nv = c.bound_vars.size();
    std::vector<std::size_t> choice(nv, 0);
    auto instantiate = [&](const HornAtom& a) {
      HornAtom out{a.relation, {}};
      for (const std::string& arg : a.args) {
        // The innermost binder of a repeated name wins.
        std::string value = arg;
        for (std::size_t v = nv; v-- > 0;) {
          if (c.bound_vars[v] == arg) {
            value = params[choice[v]];
            break;
          }
        }
        out.args.push_back(value);
      }
      return out;
    };
    while (true) {
      Ground g;
      for (const HornAtom& a : c.antecedents) g.body.push_back(instantiate(a));
      if (c.consequent) g.head = instantiate(*c.consequent);
      ground.push_back(std::move(g));
      std::size_t v = 0;
      while (v < nv && ++choice[v] == params.size()) choice[v++] = 0;
      if (v == nv) break;
    }
  }

  std::set<HornAtom> facts;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Ground& g : ground) {
      if (!std::all_of(g.body.begin(), g.body.end(), [&](const HornAtom& a) { return facts.contains(a); }))
        continue;
      if (!g.head) return true;
      changed |= facts.insert(*g.head).second;
    }
  }
  return false;
}

namespace {

// Draws use the raw engine output so sequences are identical on every
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::vector<HornClause> random_horn(std::uint64_t seed, const HornParams& params) {
  Rng rng(seed);
  const std::size_t nrel = std::max<std::size_t>(params.relations, 1);
  const std::size_t ncon = std::max<std::size_t>(params.constants, 1);
  auto arity = [&](std::size_t rel) -> std::size_t { return params.max_quantifiers > 0 && rel % 2 == 1 ? 1 : 0; };

  std::vector<HornClause> out;
  for (std::size_t i = 0; i < params.clauses; ++i) {
    HornClause c;
    const std::size_t nb = rng.below(params.max_quantifiers + 1);
    for (std::size_t v = 0; v < nb; ++v) c.bound_vars.push_back("x" + std::to_string(v));
    auto make_atom = [&]() {
      const std::size_t rel = rng.below(nrel);
      HornAtom a{"P" + std::to_string(rel), {}};
      if (arity(rel) == 1) {
        if (nb > 0 && rng.chance(2, 3))
          a.args.push_back(c.bound_vars[rng.below(nb)]);
        else
          a.args.push_back("c" + std::to_string(rng.below(ncon)));
      }
      return a;
    };
    const std::size_t nant = rng.below(params.max_antecedents + 1);
    for (std::size_t a = 0; a < nant; ++a) c.antecedents.push_back(make_atom());
    if (!rng.chance(1, 4)) c.consequent = make_atom();
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

class FormulaGen {
 public:
  FormulaGen(FormulaStore& store, Rng& rng, const InstanceParams& p, Variant v)
      : store_(store), rng_(rng), p_(p), v_(v) {}

  FormulaId formula() {
    quantifiers_left_ = v_ == Variant::qpl ? p_.max_quantifiers : 0;
    bound_.clear();
    return gen(p_.max_depth);
  }

 private:
  FormulaId leaf() {
    const bool has_bot = v_ >= Variant::l2;
    const std::size_t roll = rng_.below(12);
    if (roll == 0) return store_.top();
    if (roll == 1 && has_bot) return store_.bot();
    if (p_.unary > 0 && (p_.nullary == 0 || rng_.chance(1, 2))) {
      const TermId arg[] = {term()};
      return store_.atom("R" + std::to_string(rng_.below(p_.unary)), arg);
    }
    if (p_.nullary == 0) return store_.top();
    return store_.atom("p" + std::to_string(rng_.below(p_.nullary)), std::span<const TermId>{});
  }

  TermId term() {
    if (!bound_.empty() && rng_.chance(2, 3)) return bound_[rng_.below(bound_.size())];
    if (p_.free_variable && rng_.chance(1, 4)) return store_.variable("z");
    return store_.constant("c" + std::to_string(rng_.below(std::max<std::size_t>(p_.constants, 1))));
  }

  FormulaId gen(unsigned depth) {
    if (depth == 0 || rng_.chance(1, 4)) return leaf();
    std::vector<Kind> kinds = {Kind::conj, Kind::imp, Kind::imp};
    if (v_ >= Variant::l1) kinds.push_back(Kind::disj);
    if (quantifiers_left_ > 0) {
      kinds.push_back(Kind::forall);
      kinds.push_back(Kind::exists);
    }
    const Kind k = kinds[rng_.below(kinds.size())];
    if (is_quantifier(k)) {
      --quantifiers_left_;
      const TermId var = store_.variable(rng_.chance(1, 2) ? "x" : "y");
      bound_.push_back(var);
      const FormulaId body = gen(depth - 1);
      bound_.pop_back();
      return store_.quantified(k, var, body);
    }
    const FormulaId l = gen(depth - 1);
    // Occasionally repeat the operand to exercise A|A and A->A.
    const FormulaId r = rng_.chance(1, 8) ? l : gen(depth - 1);
    return store_.binary(k, l, r);
  }

  FormulaStore& store_;
  Rng& rng_;
  const InstanceParams& p_;
  Variant v_;
  std::size_t quantifiers_left_ = 0;
  std::vector<TermId> bound_;
};

}  // namespace

Instance random_instance(FormulaStore& store, std::uint64_t seed, const InstanceParams& params, Variant variant) {
  Rng rng(seed);
  FormulaGen gen(store, rng, params, variant);
  Instance inst;
  for (std::size_t i = 0; i < params.hyps; ++i) inst.hyps.push_back(gen.formula());

  std::vector<FormulaId> pool;
  for (FormulaId h : inst.hyps) {
    const auto subs = literal_subformulas(store, h);
    pool.insert(pool.end(), subs.begin(), subs.end());
  }
  for (std::size_t i = 0; i < params.queries; ++i) {
    const std::size_t mode = pool.empty() ? 0 : rng.below(3);
    if (mode == 0) {
      inst.queries.push_back(gen.formula());
    } else if (mode == 1) {
      inst.queries.push_back(pool[rng.below(pool.size())]);
    } else {
      const FormulaId a = pool[rng.below(pool.size())], b = pool[rng.below(pool.size())];
      inst.queries.push_back(rng.chance(1, 2) ? store.conj(a, b) : store.imp(a, b));
    }
  }
  return inst;
}

}  // namespace qpl
