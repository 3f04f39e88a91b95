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

// Recursive-descent parser for the formula grammar:
//
//   formula := quant | imp
//   quant   := ("forall" | "exists") ident+ "." formula
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | quant | atom
//   atom    := "true" | "false" | ident ("(" term ("," term)* ")")? | "(" formula ")"
//
// A quantifier in unary position extends as far right as possible, so every
// string of the base grammar parses the same way.

#include <algorithm>
#include <cctype>

#include "qpl/syntax.hpp"

namespace qpl {

namespace {

constexpr std::size_t kMaxNesting = 10000;

enum class Tok { ident, lparen, rparen, comma, dot, amp, bar, arrow, tilde, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    const std::size_t line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::end, {}, line, col};
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      advance();
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                    src_[pos_] == '\''))
        advance();
      return {Tok::ident, src_.substr(start, pos_ - start), line, col};
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      return {Tok::arrow, "->", line, col};
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      case '.': kind = Tok::dot; break;
      case '&': kind = Tok::amp; break;
      case '|': kind = Tok::bar; break;
      case '~': kind = Tok::tilde; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance();
    return {kind, src_.substr(pos_ - 1, 1), line, col};
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "true" || s == "false";
}

class Parser {
 public:
  Parser(FormulaStore& store, std::string_view text, std::span<const std::string> declared, ParseMode mode)
      : store_(store), lexer_(text), declared_(declared), mode_(mode) {
    tok_ = lexer_.next();
  }

  FormulaId parse() {
    FormulaId f = formula();
    if (tok_.kind != Tok::end) fail("unexpected trailing input '" + std::string(tok_.text) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.column); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    tok_ = lexer_.next();
  }

  void check_name(const Token& t) const {
    if (t.text[0] != '_') return;
    if (mode_ == ParseMode::trusted && t.text == kFixedConstant) return;
    throw ParseError("identifier '" + std::string(t.text) + "' uses the reserved prefix '_'", t.line, t.column);
  }

  void enter() {
    if (++depth_ > kMaxNesting) fail("formula nested too deeply");
  }
  void leave() { --depth_; }

  FormulaId formula() {
    if (tok_.kind == Tok::ident && (tok_.text == "forall" || tok_.text == "exists")) return quantified();
    return implication();
  }

  FormulaId quantified() {
    enter();
    const Kind k = tok_.text == "forall" ? Kind::forall : Kind::exists;
    tok_ = lexer_.next();
    std::vector<TermId> vars;
    while (tok_.kind == Tok::ident) {
      if (is_keyword(tok_.text)) fail("keyword '" + std::string(tok_.text) + "' cannot be bound");
      check_name(tok_);
      try {
        vars.push_back(store_.variable(tok_.text));
      } catch (const NameError& e) {
        fail(e.what());
      }
      tok_ = lexer_.next();
    }
    if (vars.empty()) fail("expected a variable after quantifier");
    expect(Tok::dot, "'.' after quantified variables");
    for (TermId v : vars) bound_.push_back(v);
    FormulaId body = formula();
    bound_.resize(bound_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = store_.quantified(k, *it, body);
    leave();
    return body;
  }

  FormulaId implication() {
    std::vector<FormulaId> chain{disjunction()};
    while (tok_.kind == Tok::arrow) {
      tok_ = lexer_.next();
      if (tok_.kind == Tok::ident && (tok_.text == "forall" || tok_.text == "exists")) {
        chain.push_back(quantified());
        break;
      }
      chain.push_back(disjunction());
    }
    FormulaId acc = chain.back();
    for (std::size_t i = chain.size() - 1; i-- > 0;) acc = store_.imp(chain[i], acc);
    return acc;
  }

  FormulaId disjunction() {
    FormulaId acc = conjunction();
    while (tok_.kind == Tok::bar) {
      tok_ = lexer_.next();
      acc = store_.disj(acc, conjunction());
    }
    return acc;
  }

  FormulaId conjunction() {
    FormulaId acc = unary();
    while (tok_.kind == Tok::amp) {
      tok_ = lexer_.next();
      acc = store_.conj(acc, unary());
    }
    return acc;
  }

  FormulaId unary() {
    std::size_t negations = 0;
    while (tok_.kind == Tok::tilde) {
      ++negations;
      tok_ = lexer_.next();
    }
    FormulaId f;
    if (tok_.kind == Tok::ident && (tok_.text == "forall" || tok_.text == "exists"))
      f = quantified();
    else
      f = atom();
    for (std::size_t i = 0; i < negations; ++i) f = store_.neg(f);
    return f;
  }

  FormulaId atom() {
    if (tok_.kind == Tok::lparen) {
      enter();
      tok_ = lexer_.next();
      FormulaId f = formula();
      expect(Tok::rparen, "')'");
      leave();
      return f;
    }
    if (tok_.kind != Tok::ident) fail(tok_.kind == Tok::end ? "unexpected end of input" : "expected a formula");
    if (tok_.text == "true") {
      tok_ = lexer_.next();
      return store_.top();
    }
    if (tok_.text == "false") {
      tok_ = lexer_.next();
      return store_.bot();
    }
    const Token rel = tok_;
    check_name(rel);
    tok_ = lexer_.next();
    std::vector<TermId> args;
    if (tok_.kind == Tok::lparen) {
      tok_ = lexer_.next();
      args.push_back(term());
      while (tok_.kind == Tok::comma) {
        tok_ = lexer_.next();
        args.push_back(term());
      }
      expect(Tok::rparen, "')' or ','");
    }
    try {
      return store_.atom(store_.relation(rel.text, args.size()), args);
    } catch (const NameError& e) {
      throw ParseError(e.what(), rel.line, rel.column);
    }
  }

  TermId term() {
    if (tok_.kind != Tok::ident || is_keyword(tok_.text)) fail("expected a term");
    const Token t = tok_;
    check_name(t);
    tok_ = lexer_.next();
    try {
      if (t.text == kFixedConstant) return store_.fixed_constant();
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
        if (store_.name(*it) == t.text) return *it;
      if (std::find(declared_.begin(), declared_.end(), t.text) != declared_.end())
        return store_.variable(t.text);
      return store_.constant(t.text);
    } catch (const NameError& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  FormulaStore& store_;
  Lexer lexer_;
  std::span<const std::string> declared_;
  ParseMode mode_;
  Token tok_;
  std::vector<TermId> bound_;
  std::size_t depth_ = 0;
};

}  // namespace

FormulaId parse_formula(FormulaStore& store, std::string_view text, std::span<const std::string> declared_vars,
                        ParseMode mode) {
  return Parser(store, text, declared_vars, mode).parse();
}

}  // namespace qpl
