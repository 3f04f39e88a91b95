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

#ifndef QPL_IO_HPP_
#define QPL_IO_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qpl/calculus.hpp"
#include "qpl/semantics.hpp"
#include "qpl/syntax.hpp"

namespace qpl {

using Json = nlohmann::ordered_json;

/// One formula per line; `#` starts a comment; `@vars x y` declares free
/// variables for the whole file. Parse errors carry the file line.
struct Problem {
  std::vector<std::string> vars;
  std::vector<FormulaId> formulas;
};

/// Returns the `@vars` declarations of `text` without parsing formulas.
std::vector<std::string> scan_var_directives(std::string_view text);

/// `extra_vars` are declared in addition to the file's own directives.
Problem read_problem(FormulaStore& store, std::string_view text, std::span<const std::string> extra_vars = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// A derivation plus what is needed to check it on its own.
struct ProofDocument {
  Derivation derivation;
  std::vector<std::string> vars;
  std::vector<FormulaId> hyps;
  std::optional<Variant> variant;
};

Json derivation_to_json(const FormulaStore& store, const Derivation& d, std::span<const FormulaId> hyps,
                        Variant variant);

/// Labels are parsed in trusted mode so the fixed constant is accepted.
/// Throws Error on malformed documents.
ProofDocument derivation_from_json(FormulaStore& store, const Json& j);

std::string render_atom(const FormulaStore& store, const GroundAtom& a);

Json countermodel_to_json(const FormulaStore& store, const ClosureTable& ct, const Countermodel& cm);

}  // namespace qpl

#endif  // QPL_IO_HPP_
