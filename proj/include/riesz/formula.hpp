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
#ifndef RIESZ_FORMULA_HPP_
#define RIESZ_FORMULA_HPP_

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz/rational.hpp"

namespace riesz {

/// Modality label for the unadorned diamond `<>`.
inline const std::string kDefaultLabel = "tau";

inline bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  if (!isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

enum class FKind { Zero, One, Scale, Add, Join, Meet, Dia, Var };

/// Immutable formula tree. The seven core constructors plus free variables
/// (variables are used only by the proof layer; evaluation requires closed
/// formulas). Surface sugar (|f|, f - g, unary minus, numeric literals) is
/// resolved by the parser and never stored.
class Formula {
 public:
  Formula() : node_(zero().node_) {}

  static Formula zero() {
    static const Formula f{std::make_shared<Node>(Node{FKind::Zero, 0, "", {}, {}})};
    return f;
  }
  static Formula one() {
    static const Formula f{std::make_shared<Node>(Node{FKind::One, 0, "", {}, {}})};
    return f;
  }
  static Formula scale(const Rational& r, Formula f) {
    return Formula(std::make_shared<Node>(
        Node{FKind::Scale, r, "", std::move(f.node_), {}}));
  }
  static Formula add(Formula a, Formula b) {
    return Formula(std::make_shared<Node>(
        Node{FKind::Add, 0, "", std::move(a.node_), std::move(b.node_)}));
  }
  static Formula join(Formula a, Formula b) {
    return Formula(std::make_shared<Node>(
        Node{FKind::Join, 0, "", std::move(a.node_), std::move(b.node_)}));
  }
  static Formula meet(Formula a, Formula b) {
    return Formula(std::make_shared<Node>(
        Node{FKind::Meet, 0, "", std::move(a.node_), std::move(b.node_)}));
  }
  static Formula dia(Formula f) { return dia(kDefaultLabel, std::move(f)); }
  static Formula dia(const std::string& label, Formula f) {
    if (!valid_label(label)) throw std::invalid_argument("bad label: " + label);
    return Formula(std::make_shared<Node>(
        Node{FKind::Dia, 0, label, std::move(f.node_), {}}));
  }
  static Formula var(const std::string& name) {
    if (!valid_label(name)) throw std::invalid_argument("bad variable: " + name);
    return Formula(std::make_shared<Node>(Node{FKind::Var, 0, name, {}, {}}));
  }

  // Derived builders; these are the standard abbreviations, expanded eagerly.
  static Formula neg(Formula f) { return scale(-1, std::move(f)); }
  static Formula sub(Formula a, Formula b) {
    return add(std::move(a), neg(std::move(b)));
  }
  static Formula pos_part(Formula f) { return join(std::move(f), zero()); }
  static Formula neg_part(Formula f) { return join(neg(std::move(f)), zero()); }
  /// |f| = (f v 0) + (-f v 0)
  static Formula abs(const Formula& f) {
    return add(pos_part(f), neg_part(f));
  }
  static Formula constant(const Rational& q) {
    if (q == 0) return zero();
    return scale(q, one());
  }

  FKind kind() const { return node_->kind; }
  const Rational& coeff() const {
    assert(kind() == FKind::Scale);
    return node_->coeff;
  }
  const std::string& label() const {
    assert(kind() == FKind::Dia);
    return node_->name;
  }
  const std::string& var_name() const {
    assert(kind() == FKind::Var);
    return node_->name;
  }
  Formula child() const {
    assert(kind() == FKind::Scale || kind() == FKind::Dia);
    return Formula(node_->left);
  }
  Formula lhs() const { return Formula(node_->left); }
  Formula rhs() const { return Formula(node_->right); }

  const void* id() const { return node_.get(); }

  bool operator==(const Formula& other) const {
    return equal(node_.get(), other.node_.get());
  }
  bool operator!=(const Formula& other) const { return !(*this == other); }

  bool is_closed() const { return closed(node_.get()); }

  void collect_vars(std::set<std::string>& out) const {
    collect(node_.get(), out);
  }

  void collect_labels(std::set<std::string>& out) const {
    collect_dia(node_.get(), out);
  }

  size_t size() const { return count(node_.get()); }

 private:
  struct Node {
    FKind kind;
    Rational coeff;
    std::string name;  // label for Dia, variable name for Var
    std::shared_ptr<const Node> left, right;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case FKind::Zero:
      case FKind::One:
        return true;
      case FKind::Var:
        return a->name == b->name;
      case FKind::Scale:
        return a->coeff == b->coeff && equal(a->left.get(), b->left.get());
      case FKind::Dia:
        return a->name == b->name && equal(a->left.get(), b->left.get());
      case FKind::Add:
      case FKind::Join:
      case FKind::Meet:
        return equal(a->left.get(), b->left.get()) &&
               equal(a->right.get(), b->right.get());
    }
    return false;
  }

  static bool closed(const Node* n) {
    switch (n->kind) {
      case FKind::Var:
        return false;
      case FKind::Zero:
      case FKind::One:
        return true;
      case FKind::Scale:
      case FKind::Dia:
        return closed(n->left.get());
      default:
        return closed(n->left.get()) && closed(n->right.get());
    }
  }

  static void collect(const Node* n, std::set<std::string>& out) {
    switch (n->kind) {
      case FKind::Var:
        out.insert(n->name);
        return;
      case FKind::Zero:
      case FKind::One:
        return;
      case FKind::Scale:
      case FKind::Dia:
        collect(n->left.get(), out);
        return;
      default:
        collect(n->left.get(), out);
        collect(n->right.get(), out);
    }
  }

  static void collect_dia(const Node* n, std::set<std::string>& out) {
    switch (n->kind) {
      case FKind::Var:
      case FKind::Zero:
      case FKind::One:
        return;
      case FKind::Dia:
        out.insert(n->name);
        collect_dia(n->left.get(), out);
        return;
      case FKind::Scale:
        collect_dia(n->left.get(), out);
        return;
      default:
        collect_dia(n->left.get(), out);
        collect_dia(n->right.get(), out);
    }
  }

  static size_t count(const Node* n) {
    switch (n->kind) {
      case FKind::Zero:
      case FKind::One:
      case FKind::Var:
        return 1;
      case FKind::Scale:
      case FKind::Dia:
        return 1 + count(n->left.get());
      default:
        return 1 + count(n->left.get()) + count(n->right.get());
    }
  }

  std::shared_ptr<const Node> node_;
};

/// m(0)=m(1)=0, m(<>f)=1+m(f), binary nodes take the max of their children.
inline unsigned modal_depth(const Formula& f) {
  switch (f.kind()) {
    case FKind::Zero:
    case FKind::One:
    case FKind::Var:
      return 0;
    case FKind::Scale:
      return modal_depth(f.child());
    case FKind::Dia:
      return 1 + modal_depth(f.child());
    default:
      return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  }
}

/// Syntactic bound n with |[[f]](x)| <= n on every model and state:
/// b(0)=0, b(1)=1, b(r f)=|r| b(f), b(f+g)=b(f)+b(g),
/// b(f v g)=b(f ^ g)=max, b(<>f)=b(f).
inline Rational unit_bound(const Formula& f) {
  switch (f.kind()) {
    case FKind::Zero:
      return 0;
    case FKind::One:
      return 1;
    case FKind::Var:
      throw std::invalid_argument("unit_bound: formula has free variables");
    case FKind::Scale:
      return rat_abs(f.coeff()) * unit_bound(f.child());
    case FKind::Dia:
      return unit_bound(f.child());
    case FKind::Add:
      return unit_bound(f.lhs()) + unit_bound(f.rhs());
    default:
      return rat_max(unit_bound(f.lhs()), unit_bound(f.rhs()));
  }
}

namespace detail {

// Printing levels, loosest to tightest. Lattice operands are rendered at
// term level so that sums under v / ^ always carry parentheses; same-op
// lattice chains associate to the left without them.
enum class PrintCtx { Lattice, SumLeft, Term };

inline void print_to(const Formula& f, PrintCtx ctx, std::string& out);

inline void print_paren(const Formula& f, std::string& out) {
  out += '(';
  print_to(f, PrintCtx::Lattice, out);
  out += ')';
}

inline void print_to(const Formula& f, PrintCtx ctx, std::string& out) {
  switch (f.kind()) {
    case FKind::Zero:
      out += '0';
      return;
    case FKind::One:
      out += '1';
      return;
    case FKind::Var:
      out += f.var_name();
      return;
    case FKind::Scale: {
      const Rational& r = f.coeff();
      if (r < 0)
        out += "(" + rat_str(r) + ")";
      else
        out += rat_str(r);
      out += '*';
      print_to(f.child(), PrintCtx::Term, out);
      return;
    }
    case FKind::Dia:
      if (f.label() == kDefaultLabel)
        out += "<>";
      else
        out += "<" + f.label() + ">";
      print_to(f.child(), PrintCtx::Term, out);
      return;
    case FKind::Add:
      if (ctx == PrintCtx::Term) {
        print_paren(f, out);
        return;
      }
      print_to(f.lhs(), PrintCtx::SumLeft, out);
      out += " + ";
      print_to(f.rhs(), PrintCtx::Term, out);
      return;
    case FKind::Join:
    case FKind::Meet: {
      if (ctx != PrintCtx::Lattice) {
        print_paren(f, out);
        return;
      }
      const char* op = f.kind() == FKind::Join ? " \\/ " : " /\\ ";
      // Chains of the same operator print flat; anything else is fenced.
      if (f.lhs().kind() == f.kind())
        print_to(f.lhs(), PrintCtx::Lattice, out);
      else
        print_to(f.lhs(), PrintCtx::Term, out);
      out += op;
      print_to(f.rhs(), PrintCtx::Term, out);
      return;
    }
  }
}

}  // namespace detail

/// Concrete syntax; parse(print(f)) always reproduces the tree exactly.
inline std::string print(const Formula& f) {
  std::string out;
  detail::print_to(f, detail::PrintCtx::Lattice, out);
  return out;
}

/// Replaces free variables per the map; unmapped variables stay.
inline Formula substitute(const Formula& f,
                          const std::map<std::string, Formula>& map) {
  switch (f.kind()) {
    case FKind::Zero:
    case FKind::One:
      return f;
    case FKind::Var: {
      auto it = map.find(f.var_name());
      return it == map.end() ? f : it->second;
    }
    case FKind::Scale:
      return Formula::scale(f.coeff(), substitute(f.child(), map));
    case FKind::Dia:
      return Formula::dia(f.label(), substitute(f.child(), map));
    case FKind::Add:
      return Formula::add(substitute(f.lhs(), map), substitute(f.rhs(), map));
    case FKind::Join:
      return Formula::join(substitute(f.lhs(), map), substitute(f.rhs(), map));
    default:
      return Formula::meet(substitute(f.lhs(), map), substitute(f.rhs(), map));
  }
}

}  // namespace riesz

#endif  // RIESZ_FORMULA_HPP_
