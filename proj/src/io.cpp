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
#include <cctype>
#include <fstream>
#include <sstream>

#include "qpl/io.hpp"

namespace qpl {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Calls f(line_number, content) for every line with comments removed.
template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    f(lineno, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

constexpr std::string_view kVarsDirective = "@vars";

}  // namespace

std::vector<std::string> scan_var_directives(std::string_view text) {
  std::vector<std::string> vars;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    line = trim(line);
    if (!line.starts_with(kVarsDirective)) return;
    const std::string_view rest = line.substr(kVarsDirective.size());
    if (!rest.empty() && !std::isspace(static_cast<unsigned char>(rest.front())))
      throw ParseError("unknown directive", lineno, 1);
    std::istringstream in{std::string(rest)};
    std::string name;
    while (in >> name) {
      if (!is_identifier(name)) throw ParseError("invalid variable name '" + name + "'", lineno, 1);
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
    }
  });
  return vars;
}

Problem read_problem(FormulaStore& store, std::string_view text, std::span<const std::string> extra_vars) {
  Problem p;
  p.vars = scan_var_directives(text);
  for (const std::string& v : extra_vars)
    if (std::find(p.vars.begin(), p.vars.end(), v) == p.vars.end()) p.vars.push_back(v);
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    const std::string_view body = trim(line);
    if (body.empty() || body.starts_with(kVarsDirective)) return;
    try {
      p.formulas.push_back(parse_formula(store, line, p.vars));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), lineno, e.column());
    } catch (const NameError& e) {
      throw ParseError(e.what(), lineno, 1);
    }
  });
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

Json derivation_to_json(const FormulaStore& store, const Derivation& d, std::span<const FormulaId> hyps,
                        Variant variant) {
  std::vector<FormulaId> labelled;
  for (const DerivationNode& n : d.nodes) labelled.push_back(n.label);
  labelled.insert(labelled.end(), hyps.begin(), hyps.end());

  Json j;
  j["root"] = d.root;
  Json nodes = Json::array();
  for (const DerivationNode& n : d.nodes) {
    Json parents = Json::array();
    for (int p : n.parents) parents.push_back(p);
    nodes.push_back(Json{{"id", n.id},
                         {"label", render(store, n.label)},
                         {"kind", std::string(to_string(n.kind))},
                         {"rule", n.rule ? Json(std::string(to_string(*n.rule))) : Json(nullptr)},
                         {"parents", std::move(parents)}});
  }
  j["nodes"] = std::move(nodes);
  j["vars"] = free_var_names(store, labelled);
  Json hyp_text = Json::array();
  for (FormulaId h : hyps) hyp_text.push_back(render(store, h));
  j["hyps"] = std::move(hyp_text);
  j["variant"] = std::string(to_string(variant));
  return j;
}

ProofDocument derivation_from_json(FormulaStore& store, const Json& j) {
  if (!j.is_object()) throw Error("derivation: expected a JSON object");
  ProofDocument doc;
  try {
    if (j.contains("vars")) doc.vars = j.at("vars").get<std::vector<std::string>>();
    auto parse = [&](const std::string& text) { return parse_formula(store, text, doc.vars, ParseMode::trusted); };
    if (j.contains("hyps"))
      for (const auto& h : j.at("hyps")) doc.hyps.push_back(parse(h.get<std::string>()));
    if (j.contains("variant") && !j.at("variant").is_null()) {
      const auto name = j.at("variant").get<std::string>();
      doc.variant = variant_from_string(name);
      if (!doc.variant) throw Error("derivation: unknown variant '" + name + "'");
    }
    doc.derivation.root = j.at("root").get<int>();
    for (const auto& jn : j.at("nodes")) {
      DerivationNode n;
      n.id = jn.at("id").get<int>();
      n.label = parse(jn.at("label").get<std::string>());
      const auto kind = jn.at("kind").get<std::string>();
      if (kind == "axiom")
        n.kind = NodeKind::axiom;
      else if (kind == "hypothesis")
        n.kind = NodeKind::hypothesis;
      else if (kind == "rule")
        n.kind = NodeKind::rule;
      else
        throw Error("derivation: unknown node kind '" + kind + "'");
      if (jn.contains("rule") && !jn.at("rule").is_null()) {
        const auto name = jn.at("rule").get<std::string>();
        n.rule = rule_from_string(name);
        if (!n.rule) throw Error("derivation: unknown rule '" + name + "'");
      }
      if (jn.contains("parents")) n.parents = jn.at("parents").get<std::vector<int>>();
      doc.derivation.nodes.push_back(std::move(n));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("derivation: ") + e.what());
  }
  return doc;
}

std::string render_atom(const FormulaStore& store, const GroundAtom& a) {
  std::string out = store.name(a.relation);
  if (a.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += store.name(a.args[i]);
  }
  return out + ')';
}

Json countermodel_to_json(const FormulaStore& store, const ClosureTable& ct, const Countermodel& cm) {
  Json j;
  Json universe = Json::array();
  for (TermId p : cm.model.universe.elements) universe.push_back(store.name(p));
  j["universe"] = std::move(universe);
  Json atoms = Json::array();
  for (const GroundAtom& a : cm.model.true_atoms) atoms.push_back(render_atom(store, a));
  j["atoms_true"] = std::move(atoms);
  Json override_values = Json::object();
  for (FormulaId f : ct.universe()) {
    auto it = cm.override_fn.assignment.find(f);
    if (it != cm.override_fn.assignment.end()) override_values[render(store, f)] = it->second;
  }
  j["override"] = std::move(override_values);
  return j;
}

}  // namespace qpl
