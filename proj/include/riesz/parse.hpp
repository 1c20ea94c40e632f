/*
 * Copyright 2026 the rieszlogic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RIESZ_PARSE_HPP_
#define RIESZ_PARSE_HPP_

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz/formula.hpp"
#include "riesz/translate.hpp"

namespace riesz {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

/* Token stream shared by the formula grammar and the derivation file
 * grammar. Formula syntax:
 *
 *   formula  := meetjoin
 *   meetjoin := sum { ("/\" | "\/") sum }     no mixing without parens
 *   sum      := term { ("+" | "-") term }
 *   term     := rational "*" term | "(" signed-rational ")" "*" term
 *             | "-" term | "<>" term | "<" label ">" term
 *             | "|" formula "|" | atom
 *   atom     := "0" | "1" | rational | identifier | "(" formula ")"
 *   rational := digits [ "/" digits ] | digits "." digits
 *
 * Extended mode adds "(+)" and "(.)" at sum level and "f (-) r".
 */
enum class Tok {
  Number, Ident, Plus, Minus, Star, Join, Meet, Diamond, Lt, Gt,
  LParen, RParen, Bar, OPlus, OTimes, OMinusOp,
  Colon, Assign, Equals, Comma, LBracket, RBracket, At, End,
};

struct Token {
  Tok type;
  std::string text;
  Rational value;  // for Number
  int line, col;
};

inline std::vector<Token> lex(const std::string& input) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok t, const std::string& text, int l, int c) {
    out.push_back(Token{t, text, Rational(0), l, c});
  };
  while (i < input.size()) {
    char c = input[i];
    int tl = line, tc = col;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (input[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
        ++i;
      }
    };
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < input.size() && input[i] != '\n') advance(1);
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < input.size() && isdigit(static_cast<unsigned char>(input[j])))
        ++j;
      if (j < input.size() && input[j] == '/' && j + 1 < input.size() &&
          isdigit(static_cast<unsigned char>(input[j + 1]))) {
        ++j;
        while (j < input.size() && isdigit(static_cast<unsigned char>(input[j])))
          ++j;
      } else if (j < input.size() && input[j] == '.' && j + 1 < input.size() &&
                 isdigit(static_cast<unsigned char>(input[j + 1]))) {
        ++j;
        while (j < input.size() && isdigit(static_cast<unsigned char>(input[j])))
          ++j;
      }
      std::string text = input.substr(i, j - i);
      auto q = parse_rational(text);
      if (!q) throw ParseError(tl, tc, "malformed rational literal '" + text + "'");
      advance(j - i);
      out.push_back(Token{Tok::Number, text, *q, tl, tc});
      continue;
    }
    if (isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < input.size() &&
             (isalnum(static_cast<unsigned char>(input[j])) || input[j] == '_'))
        ++j;
      std::string text = input.substr(i, j - i);
      advance(j - i);
      push(Tok::Ident, text, tl, tc);
      continue;
    }
    auto two = input.substr(i, 2);
    auto three = input.substr(i, 3);
    if (three == "(+)") { advance(3); push(Tok::OPlus, three, tl, tc); continue; }
    if (three == "(.)") { advance(3); push(Tok::OTimes, three, tl, tc); continue; }
    if (three == "(-)") { advance(3); push(Tok::OMinusOp, three, tl, tc); continue; }
    if (two == "/\\") { advance(2); push(Tok::Meet, two, tl, tc); continue; }
    if (two == "\\/") { advance(2); push(Tok::Join, two, tl, tc); continue; }
    if (two == "<>") { advance(2); push(Tok::Diamond, two, tl, tc); continue; }
    if (two == ":=") { advance(2); push(Tok::Assign, two, tl, tc); continue; }
    switch (c) {
      case '+': advance(1); push(Tok::Plus, "+", tl, tc); continue;
      case '-': advance(1); push(Tok::Minus, "-", tl, tc); continue;
      case '*': advance(1); push(Tok::Star, "*", tl, tc); continue;
      case '<': advance(1); push(Tok::Lt, "<", tl, tc); continue;
      case '>': advance(1); push(Tok::Gt, ">", tl, tc); continue;
      case '(': advance(1); push(Tok::LParen, "(", tl, tc); continue;
      case ')': advance(1); push(Tok::RParen, ")", tl, tc); continue;
      case '|': advance(1); push(Tok::Bar, "|", tl, tc); continue;
      case ':': advance(1); push(Tok::Colon, ":", tl, tc); continue;
      case '=': advance(1); push(Tok::Equals, "=", tl, tc); continue;
      case ',': advance(1); push(Tok::Comma, ",", tl, tc); continue;
      case '[': advance(1); push(Tok::LBracket, "[", tl, tc); continue;
      case ']': advance(1); push(Tok::RBracket, "]", tl, tc); continue;
      case '@': advance(1); push(Tok::At, "@", tl, tc); continue;
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
  }
  push(Tok::End, "", line, col);
  return out;
}

/// Recursive-descent formula parser over a token window. The cursor is left
/// on the first token that cannot extend the formula, so callers embedding
/// formulas in a larger grammar (derivation files) can keep going.
class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& toks, size_t pos,
                const std::set<std::string>* vars, bool extended)
      : toks_(toks), pos_(pos), vars_(vars), extended_(extended) {}

  ExtFormula parse() { return meetjoin(); }
  size_t pos() const { return pos_; }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.type == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, "expected " + expected + ", found " + found);
  }

  ExtFormula meetjoin() {
    ExtFormula acc = sum();
    if (peek().type != Tok::Join && peek().type != Tok::Meet) return acc;
    Tok op = peek().type;
    while (peek().type == Tok::Join || peek().type == Tok::Meet) {
      if (peek().type != op) {
        const Token& t = peek();
        throw ParseError(t.line, t.col,
                         "cannot mix /\\ and \\/ without parentheses");
      }
      take();
      ExtFormula r = sum();
      acc = ExtFormula::binary(op == Tok::Join ? ExtFormula::Kind::Join
                                               : ExtFormula::Kind::Meet,
                               std::move(acc), std::move(r));
    }
    return acc;
  }

  ExtFormula sum() {
    ExtFormula acc = term();
    for (;;) {
      Tok t = peek().type;
      if (t == Tok::Plus) {
        take();
        acc = ExtFormula::binary(ExtFormula::Kind::Add, std::move(acc), term());
      } else if (t == Tok::Minus) {
        take();
        acc = ExtFormula::binary(ExtFormula::Kind::Add, std::move(acc),
                                 ExtFormula::scale(-1, term()));
      } else if (t == Tok::OPlus && extended_) {
        take();
        acc = ExtFormula::binary(ExtFormula::Kind::OPlus, std::move(acc), term());
      } else if (t == Tok::OTimes && extended_) {
        take();
        acc = ExtFormula::binary(ExtFormula::Kind::OTimes, std::move(acc), term());
      } else if (t == Tok::OMinusOp && extended_) {
        take();
        if (peek().type != Tok::Number) fail("rational after '(-)'");
        Rational r = take().value;
        acc = ExtFormula::ominus(std::move(acc), r);
      } else {
        return acc;
      }
    }
  }

  ExtFormula term() {
    switch (peek().type) {
      case Tok::Number:
        if (peek(1).type == Tok::Star) {
          Rational r = take().value;
          take();  // '*'
          return ExtFormula::scale(r, term());
        }
        return atom();
      case Tok::LParen:
        // "(q)*f" and "(-q)*f" scale forms need lookahead past ')'.
        if (peek(1).type == Tok::Number && peek(2).type == Tok::RParen &&
            peek(3).type == Tok::Star) {
          take();
          Rational r = take().value;
          take();
          take();
          return ExtFormula::scale(r, term());
        }
        if (peek(1).type == Tok::Minus && peek(2).type == Tok::Number &&
            peek(3).type == Tok::RParen && peek(4).type == Tok::Star) {
          take();
          take();
          Rational r = take().value;
          take();
          take();
          return ExtFormula::scale(-r, term());
        }
        return atom();
      case Tok::Minus:
        take();
        return ExtFormula::scale(-1, term());
      case Tok::Diamond:
        take();
        return ExtFormula::dia(kDefaultLabel, term());
      case Tok::Lt: {
        take();
        if (peek().type != Tok::Ident) fail("label");
        std::string label = take().text;
        if (peek().type != Tok::Gt) fail("'>'");
        take();
        return ExtFormula::dia(label, term());
      }
      case Tok::Bar: {
        take();
        ExtFormula inner = meetjoin();
        if (peek().type != Tok::Bar) fail("closing '|'");
        take();
        // |f| = (f v 0) + (-f v 0)
        ExtFormula pos = ExtFormula::binary(ExtFormula::Kind::Join, inner,
                                            ExtFormula::zero());
        ExtFormula neg = ExtFormula::binary(
            ExtFormula::Kind::Join, ExtFormula::scale(-1, std::move(inner)),
            ExtFormula::zero());
        return ExtFormula::binary(ExtFormula::Kind::Add, std::move(pos),
                                  std::move(neg));
      }
      default:
        return atom();
    }
  }

  ExtFormula atom() {
    switch (peek().type) {
      case Tok::Number: {
        const Token& t = take();
        if (t.text == "0") return ExtFormula::zero();
        if (t.text == "1") return ExtFormula::one();
        return ExtFormula::scale(t.value, ExtFormula::one());
      }
      case Tok::Ident: {
        const Token& t = peek();
        if (vars_ == nullptr || !vars_->count(t.text))
          throw ParseError(t.line, t.col, "unknown identifier '" + t.text + "'");
        take();
        return ExtFormula::var(t.text);
      }
      case Tok::LParen: {
        take();
        ExtFormula inner = meetjoin();
        if (peek().type != Tok::RParen) fail("')'");
        take();
        return inner;
      }
      default:
        fail("one of: '0', '1', rational, '(', '<>', '<', '|', '-', identifier");
    }
  }

  const std::vector<Token>& toks_;
  size_t pos_;
  const std::set<std::string>* vars_;
  bool extended_;
};

namespace detail {

inline Formula parse_impl(const std::string& text,
                          const std::set<std::string>* vars, bool extended) {
  auto toks = lex(text);
  FormulaParser p(toks, 0, vars, extended);
  ExtFormula e = p.parse();
  const Token& rest = toks[p.pos()];
  if (rest.type != Tok::End)
    throw ParseError(rest.line, rest.col,
                     "trailing input starting at '" + rest.text + "'");
  return expand(e);
}

}  // namespace detail

/// Core grammar only; identifiers are rejected.
inline Formula parse(const std::string& text) {
  return detail::parse_impl(text, nullptr, false);
}

/// Core grammar with free variables drawn from `vars`.
inline Formula parse_open(const std::string& text,
                          const std::set<std::string>& vars) {
  return detail::parse_impl(text, &vars, false);
}

/// Extended grammar ((+), (.), (-) r); result is already expanded to core.
inline Formula parse_extended(const std::string& text) {
  return detail::parse_impl(text, nullptr, true);
}

}  // namespace riesz

#endif  // RIESZ_PARSE_HPP_
