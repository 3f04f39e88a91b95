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

// Command-line front end.
//
// Exit status: 0 decided (whatever the verdict), 1 proof rejected by
// verify-proof, 2 input error, 3 resource limit, 4 internal error.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpl/algebra.hpp"
#include "qpl/calculus.hpp"
#include "qpl/closure.hpp"
#include "qpl/engine.hpp"
#include "qpl/generators.hpp"
#include "qpl/io.hpp"
#include "qpl/semantics.hpp"
#include "qpl/syntax.hpp"

namespace {

using namespace qpl;

enum Exit : int { kOk = 0, kRejected = 1, kInputError = 2, kResourceLimit = 3, kInternal = 4 };

struct Options {
  std::string variant_name = "qpl";
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::size_t closure_cap = kDefaultClosureCap;
  unsigned oracle_cap = kDefaultOracleCap;

  Variant variant() const {
    auto v = variant_from_string(variant_name);
    if (!v) throw Error("unknown variant '" + variant_name + "' (expected orig, l1, l2, pfqpl or qpl)");
    return *v;
  }
};

struct ProblemArgs {
  std::string hyp_file;
  std::vector<std::string> queries;
  std::string queries_file;
  std::string proof_path;
  std::string countermodel_path;
  bool expand_tree = false;
  std::size_t tree_cap = 1'000'000;
};

// Hypotheses and queries share one store and one variable declaration list.
struct LoadedProblem {
  FormulaStore store;
  std::vector<FormulaId> hyps;
  std::vector<FormulaId> queries;
  std::vector<std::string> query_text;
};

LoadedProblem load(const ProblemArgs& a, bool need_queries) {
  LoadedProblem p;
  const std::string hyp_text = a.hyp_file.empty() ? std::string() : read_file(a.hyp_file);
  const std::string query_file_text = a.queries_file.empty() ? std::string() : read_file(a.queries_file);
  std::vector<std::string> vars = scan_var_directives(hyp_text);
  for (const std::string& v : scan_var_directives(query_file_text))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

  try {
    p.hyps = read_problem(p.store, hyp_text, vars).formulas;
  } catch (const ParseError& e) {
    throw ParseError(a.hyp_file + ": " + e.message(), e.line(), e.column());
  }
  try {
    for (FormulaId q : read_problem(p.store, query_file_text, vars).formulas) p.queries.push_back(q);
  } catch (const ParseError& e) {
    throw ParseError(a.queries_file + ": " + e.message(), e.line(), e.column());
  }
  for (std::size_t i = 0; i < a.queries.size(); ++i) {
    try {
      p.queries.push_back(parse_formula(p.store, a.queries[i], vars));
    } catch (const ParseError& e) {
      throw ParseError("query " + std::to_string(i + 1) + ": " + e.message(), e.line(), e.column());
    }
  }
  for (FormulaId q : p.queries) p.query_text.push_back(render(p.store, q));
  if (need_queries && p.queries.empty()) throw Error("no query given (use -q or --queries)");
  return p;
}

Json stats_json(const SaturationStats& s) {
  return Json{{"universe_size", s.universe_size},
              {"instances", s.instance_count},
              {"instances_fired", s.instances_fired},
              {"derived", s.derived_count}};
}

bool countermodel_supported(const FormulaStore& store, const ClosureTable& ct, Variant v) {
  if (v == Variant::qpl) return true;
  if (v != Variant::pfqpl) return false;
  return std::all_of(ct.universe().begin(), ct.universe().end(),
                     [&](FormulaId f) { return store.quantifier_depth(f) == 0; });
}

int run_check(const Options& opt, const ProblemArgs& a, bool prove_mode) {
  const Variant variant = opt.variant();
  LoadedProblem p = load(a, true);
  EngineOptions eo{opt.closure_cap};

  Json results = Json::array();
  Json proofs = Json::array();
  Json models = Json::array();
  bool warned = false;
  for (std::size_t i = 0; i < p.queries.size(); ++i) {
    const FormulaId q = p.queries[i];
    // Each query gets its own closure, so every answer is local to it.
    const Verdict v = entails(p.store, p.hyps, q, variant, eo);
    results.push_back(Json{{"query", p.query_text[i]}, {"entailed", v.entailed}, {"stats", stats_json(v.stats)}});
    if (!opt.json) std::cout << p.query_text[i] << ": " << (v.entailed ? "entailed" : "not entailed") << '\n';

    if (v.proof) {
      const Derivation d = a.expand_tree ? expand_tree(*v.proof, a.tree_cap) : *v.proof;
      proofs.push_back(derivation_to_json(p.store, d, p.hyps, variant));
    } else {
      proofs.push_back(nullptr);
    }

    if (!a.countermodel_path.empty()) {
      if (v.entailed) {
        models.push_back(nullptr);
      } else if (!countermodel_supported(p.store, *v.closure, variant)) {
        models.push_back(nullptr);
        if (!warned) std::cerr << "qpl: countermodels are available for qpl and quantifier-free pfqpl only\n";
        warned = true;
      } else {
        const Countermodel cm = countermodel(p.hyps, q, *v.state, *v.closure);
        models.push_back(countermodel_to_json(p.store, *v.closure, cm));
      }
    }
  }

  if (!a.proof_path.empty()) {
    write_file(a.proof_path, proofs.dump(2) + "\n");
  } else if (prove_mode) {
    std::cout << proofs.dump(2) << '\n';
  }
  if (!a.countermodel_path.empty()) write_file(a.countermodel_path, models.dump(2) + "\n");
  if (opt.json && !(prove_mode && a.proof_path.empty()))
    std::cout << Json{{"variant", std::string(to_string(variant))}, {"results", results}}.dump(2) << '\n';
  return kOk;
}

int run_closure(const Options& opt, const ProblemArgs& a) {
  LoadedProblem p = load(a, false);
  std::vector<FormulaId> s = p.hyps;
  s.insert(s.end(), p.queries.begin(), p.queries.end());
  const ClosureTable ct = ClosureTable::build(p.store, s, opt.closure_cap);
  const ClosureStats& st = ct.stats();
  const bool within = st.universe_size <= st.size_bound;
  Json params = Json::array();
  for (TermId t : ct.params().elements) params.push_back(p.store.name(t));
  if (opt.json) {
    Json universe = Json::array();
    for (FormulaId f : ct.universe()) universe.push_back(render(p.store, f));
    std::cout << Json{{"universe", universe},
                      {"params", params},
                      {"stats",
                       {{"size", st.universe_size},
                        {"params", st.param_count},
                        {"depth", st.depth},
                        {"length", st.length},
                        {"bound", st.size_bound}}},
                      {"within_bound", within}}
                     .dump(2)
              << '\n';
  } else {
    for (FormulaId f : ct.universe()) std::cout << render(p.store, f) << '\n';
    std::cout << "# size " << st.universe_size << ", params " << st.param_count << ", depth " << st.depth
              << ", length " << st.length << ", bound " << st.size_bound << (within ? " (within bound)" : " (EXCEEDS bound)")
              << '\n';
  }
  return within ? kOk : kInternal;
}

int run_oracle(const Options& opt, const ProblemArgs& a) {
  LoadedProblem p = load(a, true);
  Json results = Json::array();
  for (std::size_t i = 0; i < p.queries.size(); ++i) {
    const bool yields = semantic_yields_bruteforce(p.store, p.hyps, p.queries[i], opt.oracle_cap);
    results.push_back(Json{{"query", p.query_text[i]}, {"yields", yields}});
    if (!opt.json) std::cout << p.query_text[i] << ": " << (yields ? "yields" : "does not yield") << '\n';
  }
  if (opt.json) std::cout << Json{{"results", results}}.dump(2) << '\n';
  return kOk;
}

int run_verify(const Options& opt, const std::string& path, const std::string& hyp_file, bool variant_given) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  std::vector<Json> items;
  if (doc.is_array()) {
    for (auto& item : doc) items.push_back(item);
  } else {
    items.push_back(doc);
  }
  const std::string hyp_text = hyp_file.empty() ? std::string() : read_file(hyp_file);

  bool all_ok = true;
  Json reports = Json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].is_null()) {
      reports.push_back(nullptr);
      continue;
    }
    FormulaStore store;
    ProofDocument pd = derivation_from_json(store, items[i]);
    if (!hyp_file.empty()) pd.hyps = read_problem(store, hyp_text, pd.vars).formulas;
    const Variant variant = variant_given || !pd.variant ? opt.variant() : *pd.variant;
    const CheckReport report = check_derivation(store, pd.derivation, variant, pd.hyps);
    all_ok = all_ok && report.ok;
    reports.push_back(Json{{"index", i}, {"ok", report.ok}, {"summary", report.summary()}});
    if (!opt.json)
      std::cout << "proof " << i << ": " << (report.ok ? "valid" : "INVALID") << (report.ok ? "" : " - ")
                << (report.ok ? "" : report.summary()) << '\n';
  }
  if (opt.json) std::cout << Json{{"ok", all_ok}, {"proofs", reports}}.dump(2) << '\n';
  return all_ok ? kOk : kRejected;
}

int run_algebra(const Options& opt, const std::string& s_text, const std::string& t_text) {
  const InfonTerm s = parse_term(s_text), t = parse_term(t_text);
  const bool geq = term_geq(s, t), leq = term_geq(t, s);
  if (opt.json) {
    std::cout << Json{{"s", to_string(s)}, {"t", to_string(t)}, {"s_geq_t", geq}, {"t_geq_s", leq}, {"equal", geq && leq}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "s >= t: " << (geq ? "true" : "false") << '\n'
              << "t >= s: " << (leq ? "true" : "false") << '\n'
              << "s = t: " << (geq && leq ? "true" : "false") << '\n';
  }
  return kOk;
}

std::uint64_t require_seed(const Options& opt) {
  if (opt.seed) return *opt.seed;
  if (opt.json) throw Error("--seed is required with --json");
  return 0;
}

void print_instance(const Options& opt, const FormulaStore& store, const Instance& inst, std::uint64_t seed) {
  std::vector<FormulaId> all = inst.hyps;
  all.insert(all.end(), inst.queries.begin(), inst.queries.end());
  const std::vector<std::string> vars = free_var_names(store, all);
  if (opt.json) {
    Json hyps = Json::array(), queries = Json::array();
    for (FormulaId h : inst.hyps) hyps.push_back(render(store, h));
    for (FormulaId q : inst.queries) queries.push_back(render(store, q));
    std::cout << Json{{"seed", seed}, {"vars", vars}, {"hyps", hyps}, {"queries", queries}}.dump(2) << '\n';
    return;
  }
  std::cout << "# seed " << seed << '\n';
  if (!vars.empty()) {
    std::cout << "@vars";
    for (const auto& v : vars) std::cout << ' ' << v;
    std::cout << '\n';
  }
  for (FormulaId h : inst.hyps) std::cout << render(store, h) << '\n';
  for (FormulaId q : inst.queries) std::cout << "# query: " << render(store, q) << '\n';
}

int run_gen_horn(const Options& opt, const HornParams& hp) {
  const std::uint64_t seed = require_seed(opt);
  FormulaStore store;
  Instance inst;
  for (const HornClause& c : random_horn(seed, hp)) inst.hyps.push_back(to_formula(store, c));
  inst.queries.push_back(store.bot());
  print_instance(opt, store, inst, seed);
  return kOk;
}

TwoRegisterMachine random_machine(std::uint64_t seed, int states) {
  std::mt19937_64 rng(seed);
  states = std::max(states, 2);
  std::map<int, Instruction> program;
  for (int s = 0; s < states; ++s) {
    if (s == TwoRegisterMachine::kHalt) continue;
    const int reg = 1 + static_cast<int>(rng() % 2);
    const int a = static_cast<int>(rng() % states), b = static_cast<int>(rng() % states);
    if (rng() % 2 == 0)
      program[s] = Inc{reg, a};
    else
      program[s] = Dec{reg, a, b};
  }
  return TwoRegisterMachine(std::move(program));
}

std::string machine_text(const TwoRegisterMachine& m) {
  std::string out;
  for (const auto& [s, instr] : m.program()) {
    if (const auto* inc = std::get_if<Inc>(&instr)) {
      out += "state " + std::to_string(s) + ": inc " + std::to_string(inc->reg) + " -> " + std::to_string(inc->next);
    } else {
      const auto& dec = std::get<Dec>(instr);
      out += "state " + std::to_string(s) + ": dec " + std::to_string(dec.reg) + " zero-> " +
             std::to_string(dec.if_zero) + " else-> " + std::to_string(dec.if_nonzero);
    }
    out += '\n';
  }
  return out;
}

int run_gen_machine(const Options& opt, const std::string& from, std::optional<std::uint64_t> t, int states) {
  std::uint64_t seed = 0;
  const TwoRegisterMachine m = from.empty() ? random_machine(seed = require_seed(opt), states)
                                            : parse_machine(read_file(from));
  if (!t) {
    if (opt.json) {
      std::cout << Json{{"seed", seed}, {"machine", machine_text(m)}}.dump(2) << '\n';
    } else {
      std::cout << machine_text(m);
    }
    return kOk;
  }
  FormulaStore store;
  print_instance(opt, store, bounded_halting_instance(store, m, *t), seed);
  return kOk;
}

int run_gen_random(const Options& opt, const InstanceParams& ip) {
  const std::uint64_t seed = require_seed(opt);
  FormulaStore store;
  print_instance(opt, store, random_instance(store, seed, ip, opt.variant()), seed);
  return kOk;
}

int run_bench_chain(const Options& opt, std::size_t n, bool with_proof, bool variant_given) {
  const Variant variant = variant_given ? opt.variant() : Variant::pfqpl;
  FormulaStore store;
  const auto start = std::chrono::steady_clock::now();
  const Instance chain = implication_chain(store, n);
  std::uint64_t symbols = store.length(chain.queries[0]);
  for (FormulaId h : chain.hyps) symbols += store.length(h);
  const Verdict v = entails(store, chain.hyps, chain.queries[0], variant, EngineOptions{opt.closure_cap});
  std::size_t proof_nodes = 0;
  if (with_proof && v.proof) proof_nodes = v.proof->nodes.size();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (opt.json) {
    std::cout << Json{{"n", n},
                      {"symbols", symbols},
                      {"variant", std::string(to_string(variant))},
                      {"entailed", v.entailed},
                      {"proof_nodes", proof_nodes},
                      {"seconds", seconds}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "n=" << n << " symbols=" << symbols << " entailed=" << (v.entailed ? "true" : "false")
              << " seconds=" << seconds << '\n';
  }
  return kOk;
}

void add_problem_options(CLI::App* cmd, ProblemArgs& a, bool hyps_required) {
  auto* h = cmd->add_option("hyps", a.hyp_file, "Hypothesis file (one formula per line)")->check(CLI::ExistingFile);
  if (hyps_required) h->required();
  cmd->add_option("-q,--query", a.queries, "Query formula (repeatable)");
  cmd->add_option("--queries", a.queries_file, "File with one query per line")->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for quantified primal logic"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--variant", opt.variant_name, "Calculus: orig, l1, l2, pfqpl or qpl")->capture_default_str();
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--seed", opt.seed, "Seed for randomized commands");
  app.add_option("--closure-cap", opt.closure_cap, "Maximum closure entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--oracle-cap", opt.oracle_cap, "Maximum brute-force exponent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ProblemArgs check_args, prove_args, closure_args, oracle_args;
  auto* check = app.add_subcommand("check", "Decide each query from the hypotheses");
  add_problem_options(check, check_args, false);
  check->add_option("--proof", check_args.proof_path, "Write derivations (JSON array, null when not entailed)");
  check->add_option("--countermodel", check_args.countermodel_path,
                    "Write countermodels (JSON array, null when entailed)");

  auto* prove = app.add_subcommand("prove", "Decide and emit derivations");
  add_problem_options(prove, prove_args, false);
  prove->add_option("--proof", prove_args.proof_path, "Output path (default: standard output)");
  prove->add_flag("--expand-tree", prove_args.expand_tree, "Unfold shared subderivations into a tree");
  prove->add_option("--tree-cap", prove_args.tree_cap, "Node cap for --expand-tree")->capture_default_str();

  auto* closure = app.add_subcommand("closure", "Print the closure and its size bound");
  add_problem_options(closure, closure_args, false);

  auto* oracle = app.add_subcommand("oracle", "Brute-force semantic consequence");
  add_problem_options(oracle, oracle_args, false);

  std::string proof_file, verify_hyps;
  auto* verify = app.add_subcommand("verify-proof", "Check derivations written by check or prove");
  verify->add_option("proof", proof_file, "Derivation JSON (object or array)")->required()->check(CLI::ExistingFile);
  verify->add_option("--hyps", verify_hyps, "Hypothesis file overriding the embedded list")->check(CLI::ExistingFile);

  std::string term_s, term_t;
  auto* algebra = app.add_subcommand("algebra", "Compare two infon terms");
  algebra->add_option("s", term_s, "Term, e.g. 'a + (b * 0)'")->required();
  algebra->add_option("t", term_t, "Term")->required();

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  HornParams hp;
  auto* gen_horn = gen->add_subcommand("horn", "Random universal Horn set (query: false)");
  gen_horn->add_option("--clauses", hp.clauses)->capture_default_str();
  gen_horn->add_option("--relations", hp.relations)->capture_default_str();
  gen_horn->add_option("--constants", hp.constants)->capture_default_str();
  gen_horn->add_option("--max-antecedents", hp.max_antecedents)->capture_default_str();
  gen_horn->add_option("--quantifiers", hp.max_quantifiers)->capture_default_str();

  std::string machine_file;
  std::optional<std::uint64_t> machine_t;
  int machine_states = 4;
  auto* gen_machine = gen->add_subcommand("machine", "Random or given machine; with --t, its halting instance");
  gen_machine->add_option("--from", machine_file, "Machine description file")->check(CLI::ExistingFile);
  gen_machine->add_option("--t", machine_t, "Length of the successor chain");
  gen_machine->add_option("--states", machine_states, "States of a random machine")->capture_default_str();

  InstanceParams ip;
  auto* gen_random = gen->add_subcommand("random", "Random instance over the connectives of --variant");
  gen_random->add_option("--hyps", ip.hyps)->capture_default_str();
  gen_random->add_option("--queries", ip.queries)->capture_default_str();
  gen_random->add_option("--depth", ip.max_depth)->capture_default_str();
  gen_random->add_option("--quantifiers", ip.max_quantifiers)->capture_default_str();

  std::size_t chain_n = 1000;
  bool chain_proof = false;
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* chain = bench->add_subcommand("chain", "Implication chain p0, p0 -> p1, ..., query pn");
  chain->add_option("--n", chain_n, "Chain length")->capture_default_str();
  chain->add_flag("--proof", chain_proof, "Also extract the proof");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return run_check(opt, check_args, false);
    if (*prove) return run_check(opt, prove_args, true);
    if (*closure) return run_closure(opt, closure_args);
    if (*oracle) return run_oracle(opt, oracle_args);
    if (*verify) return run_verify(opt, proof_file, verify_hyps, app.count("--variant") > 0);
    if (*algebra) return run_algebra(opt, term_s, term_t);
    if (*gen_horn) return run_gen_horn(opt, hp);
    if (*gen_machine) return run_gen_machine(opt, machine_file, machine_t, machine_states);
    if (*gen_random) return run_gen_random(opt, ip);
    if (*chain) return run_bench_chain(opt, chain_n, chain_proof, app.count("--variant") > 0);
  } catch (const ResourceLimit& e) {
    std::cerr << "qpl: resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const InternalError& e) {
    std::cerr << "qpl: internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "qpl: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
