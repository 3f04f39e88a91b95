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

#include <cctype>
#include <random>
#include <vector>

#include "qpl/algebra.hpp"
#include "qpl/engine.hpp"

namespace qpl {

InfonTerm InfonTerm::zero() { return InfonTerm(std::make_shared<const Node>(Node{Op::zero, {}, nullptr, nullptr})); }

InfonTerm InfonTerm::gen(std::string name) {
  if (!is_identifier(name) || name.front() == '_') throw NameError("invalid generator name '" + name + "'");
  return InfonTerm(std::make_shared<const Node>(Node{Op::gen, std::move(name), nullptr, nullptr}));
}

InfonTerm InfonTerm::join(InfonTerm l, InfonTerm r) {
  return InfonTerm(std::make_shared<const Node>(
      Node{Op::join, {}, std::make_shared<const InfonTerm>(std::move(l)), std::make_shared<const InfonTerm>(std::move(r))}));
}

InfonTerm InfonTerm::pcomp(InfonTerm l, InfonTerm r) {
  return InfonTerm(std::make_shared<const Node>(
      Node{Op::pcomp, {}, std::make_shared<const InfonTerm>(std::move(l)), std::make_shared<const InfonTerm>(std::move(r))}));
}

std::size_t InfonTerm::node_count() const {
  std::size_t n = 0;
  std::vector<const InfonTerm*> stack{this};
  while (!stack.empty()) {
    const InfonTerm* t = stack.back();
    stack.pop_back();
    ++n;
    if (t->op() == Op::join || t->op() == Op::pcomp) {
      stack.push_back(&t->lhs());
      stack.push_back(&t->rhs());
    }
  }
  return n;
}

std::string to_string(const InfonTerm& t) {
  switch (t.op()) {
    case InfonTerm::Op::zero:
      return "0";
    case InfonTerm::Op::gen:
      return t.name();
    case InfonTerm::Op::join:
      return "(" + to_string(t.lhs()) + " + " + to_string(t.rhs()) + ")";
    case InfonTerm::Op::pcomp:
      return "(" + to_string(t.lhs()) + " * " + to_string(t.rhs()) + ")";
  }
  return {};
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  InfonTerm parse() {
    InfonTerm t = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  static constexpr int kMaxNesting = 10000;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  InfonTerm sum() {
    InfonTerm t = product();
    while (eat('+')) t = InfonTerm::join(std::move(t), product());
    return t;
  }

  InfonTerm product() {
    std::vector<InfonTerm> factors{primary()};
    while (eat('*')) factors.push_back(primary());
    InfonTerm t = std::move(factors.back());
    for (std::size_t i = factors.size() - 1; i-- > 0;) t = InfonTerm::pcomp(std::move(factors[i]), std::move(t));
    return t;
  }

  InfonTerm primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of term");
    const char c = text_[pos_];
    if (c == '(') {
      if (++depth_ > kMaxNesting) fail("nesting too deep");
      ++pos_;
      InfonTerm t = sum();
      if (!eat(')')) fail("expected ')'");
      --depth_;
      return t;
    }
    if (c == '0') {
      ++pos_;
      return InfonTerm::zero();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      return InfonTerm::gen(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

InfonTerm parse_term(std::string_view text) { return TermParser(text).parse(); }

FormulaId term_to_formula(FormulaStore& store, const InfonTerm& t) {
  switch (t.op()) {
    case InfonTerm::Op::zero:
      return store.top();
    case InfonTerm::Op::gen:
      return store.atom(t.name(), std::span<const TermId>{});
    case InfonTerm::Op::join:
      return store.conj(term_to_formula(store, t.lhs()), term_to_formula(store, t.rhs()));
    case InfonTerm::Op::pcomp:
      return store.imp(term_to_formula(store, t.lhs()), term_to_formula(store, t.rhs()));
  }
  throw InternalError("term_to_formula: unknown operation");
}

bool term_geq(const InfonTerm& s, const InfonTerm& t) {
  FormulaStore store;
  const FormulaId hyp = term_to_formula(store, s);
  const FormulaId query = term_to_formula(store, t);
  const FormulaId hyps[] = {hyp};
  return entails(store, hyps, query, Variant::original).entailed;
}

bool term_equal(const InfonTerm& s, const InfonTerm& t) { return term_geq(s, t) && term_geq(t, s); }

InfonTerm random_term(std::uint64_t seed, std::size_t max_nodes, std::size_t generators) {
  std::mt19937_64 rng(seed);
  const std::size_t ngen = generators == 0 ? 1 : generators;
  // Binary nodes take 2k+1 slots; pick k so the term stays within the cap.
  const std::size_t max_internal = max_nodes == 0 ? 0 : (max_nodes - 1) / 2;
  const std::size_t internal = static_cast<std::size_t>(rng() % (max_internal + 1));

  auto leaf = [&]() {
    if (rng() % 6 == 0) return InfonTerm::zero();
    return InfonTerm::gen("g" + std::to_string(rng() % ngen));
  };
  // Build by splitting the internal-node budget between the two sides.
  struct Builder {
    std::mt19937_64& rng;
    decltype(leaf)& make_leaf;
    InfonTerm build(std::size_t k) {
      if (k == 0) return make_leaf();
      const std::size_t left = static_cast<std::size_t>(rng() % k);
      const bool is_join = rng() % 2 == 0;
      InfonTerm l = build(left);
      InfonTerm r = build(k - 1 - left);
      return is_join ? InfonTerm::join(std::move(l), std::move(r)) : InfonTerm::pcomp(std::move(l), std::move(r));
    }
  };
  return Builder{rng, leaf}.build(internal);
}

}  // namespace qpl
