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
#ifndef RIESZ_PROOFS_HPP_
#define RIESZ_PROOFS_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "riesz/equivalence.hpp"
#include "riesz/formula.hpp"
#include "riesz/parse.hpp"
#include "riesz/piecewise.hpp"
#include "riesz/sampler.hpp"
#include "riesz/semantics.hpp"

namespace riesz {

/// An equation between formulas that may carry free variables.
struct Equation {
  Formula lhs, rhs;
  bool operator==(const Equation& o) const {
    return lhs == o.lhs && rhs == o.rhs;
  }
};

inline std::string equation_str(const Equation& e) {
  return print(e.lhs) + " = " + print(e.rhs);
}

/// a <= b is carried as the equation a ^ b = a.
inline Equation encode_leq(const Formula& a, const Formula& b) {
  return Equation{Formula::meet(a, b), a};
}

/// Recognizes the a ^ b = a shape and recovers (a, b).
inline std::optional<std::pair<Formula, Formula>> decode_leq(const Equation& e) {
  if (e.lhs.kind() != FKind::Meet) return std::nullopt;
  if (e.lhs.lhs() != e.rhs) return std::nullopt;
  return std::make_pair(e.lhs.lhs(), e.lhs.rhs());
}

/// One axiom of the equational system. Scalar-indexed axioms are schemas:
/// instantiation supplies concrete rationals (the signature has one scalar
/// operation per real, so the catalogue stays finite only this way). Modal
/// axioms additionally take the modality label.
struct AxiomSchema {
  std::string id;
  std::vector<std::string> vars;
  std::vector<std::string> scalar_params;
  bool nonneg_scalar = false;  // side condition r >= 0 on the first parameter
  bool modal = false;
  bool inequality = false;
  std::function<std::pair<Formula, Formula>(
      const std::map<std::string, Rational>&, const std::string&)>
      build;  // the two sides, before inequality encoding

  std::pair<Formula, Formula> sides(
      const std::map<std::string, Rational>& scalars,
      const std::string& label) const {
    for (const auto& p : scalar_params)
      if (!scalars.count(p))
        throw std::invalid_argument("axiom '" + id +
                                    "' needs scalar parameter '" + p + "'");
    if (nonneg_scalar && scalars.at(scalar_params[0]) < 0)
      throw std::domain_error("axiom '" + id + "' requires " +
                              scalar_params[0] + " >= 0, got " +
                              rat_str(scalars.at(scalar_params[0])));
    return build(scalars, label);
  }

  Equation instantiate(const std::map<std::string, Rational>& scalars,
                       const std::string& label) const {
    auto [a, b] = sides(scalars, label);
    return inequality ? encode_leq(a, b) : Equation{a, b};
  }
};

/// The complete machine-readable catalogue: vector-space axioms, lattice
/// axioms, the two compatibility inequalities, positivity of the unit, and
/// the three diamond axioms (linearity, positivity, 1-decreasing).
///
/// The full system additionally has an infinitary rule (from n|x| <= |y| for
/// every natural n, conclude x = 0). It has no finite proof object, so it is
/// deliberately absent here: derivations whose conclusions genuinely need it
/// are out of this checker's reach, and a justification pretending to apply
/// it with finitely many premises would be unsound.
inline const std::vector<AxiomSchema>& axiom_catalogue() {
  static const std::vector<AxiomSchema> catalogue = [] {
    std::vector<AxiomSchema> out;
    Formula x = Formula::var("x"), y = Formula::var("y"), z = Formula::var("z");
    using Scalars = std::map<std::string, Rational>;
    auto eq = [&out](std::string id, std::vector<std::string> vars,
                     Formula lhs, Formula rhs) {
      out.push_back(AxiomSchema{
          std::move(id), std::move(vars), {}, false, false, false,
          [lhs, rhs](const Scalars&, const std::string&) {
            return std::make_pair(lhs, rhs);
          }});
    };

    // 1. Riesz space axioms: real vector space ...
    eq("add-assoc", {"x", "y", "z"}, Formula::add(x, Formula::add(y, z)),
       Formula::add(Formula::add(x, y), z));
    eq("add-comm", {"x", "y"}, Formula::add(x, y), Formula::add(y, x));
    eq("add-zero", {"x"}, Formula::add(x, Formula::zero()), x);
    eq("add-inverse", {"x"}, Formula::add(x, Formula::neg(x)), Formula::zero());
    out.push_back(AxiomSchema{
        "scalar-assoc", {"x"}, {"r1", "r2"}, false, false, false,
        [x](const Scalars& s, const std::string&) {
          return std::make_pair(
              Formula::scale(s.at("r1"), Formula::scale(s.at("r2"), x)),
              Formula::scale(s.at("r1") * s.at("r2"), x));
        }});
    eq("scalar-unit", {"x"}, Formula::scale(1, x), x);
    out.push_back(AxiomSchema{
        "scalar-dist-formula", {"x", "y"}, {"r"}, false, false, false,
        [x, y](const Scalars& s, const std::string&) {
          return std::make_pair(
              Formula::scale(s.at("r"), Formula::add(x, y)),
              Formula::add(Formula::scale(s.at("r"), x),
                           Formula::scale(s.at("r"), y)));
        }});
    out.push_back(AxiomSchema{
        "scalar-dist-scalar", {"x"}, {"r1", "r2"}, false, false, false,
        [x](const Scalars& s, const std::string&) {
          return std::make_pair(
              Formula::scale(s.at("r1") + s.at("r2"), x),
              Formula::add(Formula::scale(s.at("r1"), x),
                           Formula::scale(s.at("r2"), x)));
        }});

    // ... lattice ...
    eq("lattice-join-assoc", {"x", "y", "z"},
       Formula::join(x, Formula::join(y, z)),
       Formula::join(Formula::join(x, y), z));
    eq("lattice-meet-assoc", {"x", "y", "z"},
       Formula::meet(x, Formula::meet(y, z)),
       Formula::meet(Formula::meet(x, y), z));
    eq("lattice-join-comm", {"z", "y"}, Formula::join(z, y), Formula::join(y, z));
    eq("lattice-meet-comm", {"z", "y"}, Formula::meet(z, y), Formula::meet(y, z));
    eq("lattice-absorption-1", {"z", "y"},
       Formula::join(z, Formula::meet(z, y)), z);
    eq("lattice-absorption-2", {"z", "y"},
       Formula::meet(z, Formula::join(z, y)), z);
    eq("lattice-join-idem", {"x"}, Formula::join(x, x), x);
    eq("lattice-meet-idem", {"x"}, Formula::meet(x, x), x);

    // ... and compatibility.
    out.push_back(AxiomSchema{
        "compat-add", {"x", "y", "z"}, {}, false, false, true,
        [x, y, z](const Scalars&, const std::string&) {
          return std::make_pair(Formula::add(Formula::meet(x, y), z),
                                Formula::add(y, z));
        }});
    out.push_back(AxiomSchema{
        "scalar-compat", {"x", "y"}, {"r"}, true, false, true,
        [x, y](const Scalars& s, const std::string&) {
          return std::make_pair(
              Formula::scale(s.at("r"), Formula::meet(x, y)),
              Formula::scale(s.at("r"), y));
        }});

    // 2. The distinguished element is positive.
    out.push_back(AxiomSchema{
        "positive-unit", {}, {}, false, false, true,
        [](const Scalars&, const std::string&) {
          return std::make_pair(Formula::zero(), Formula::one());
        }});

    // 3. Modal axioms, one family per label.
    out.push_back(AxiomSchema{
        "modal-linearity", {"x", "y"}, {"r1", "r2"}, false, true, false,
        [x, y](const Scalars& s, const std::string& l) {
          return std::make_pair(
              Formula::dia(l, Formula::add(Formula::scale(s.at("r1"), x),
                                           Formula::scale(s.at("r2"), y))),
              Formula::add(Formula::scale(s.at("r1"), Formula::dia(l, x)),
                           Formula::scale(s.at("r2"), Formula::dia(l, y))));
        }});
    out.push_back(AxiomSchema{
        "modal-positivity", {"x"}, {}, false, true, true,
        [x](const Scalars&, const std::string& l) {
          return std::make_pair(Formula::zero(),
                                Formula::dia(l, Formula::pos_part(x)));
        }});
    out.push_back(AxiomSchema{
        "modal-1-decreasing", {}, {}, false, true, true,
        [](const Scalars&, const std::string& l) {
          return std::make_pair(Formula::dia(l, Formula::one()), Formula::one());
        }});
    return out;
  }();
  return catalogue;
}

inline const AxiomSchema* find_axiom(const std::string& id) {
  for (const auto& a : axiom_catalogue())
    if (a.id == id) return &a;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

struct Substitution {
  std::map<std::string, Formula> vars;
};

struct Justification {
  enum class Kind {
    Axiom, Refl, Sym, Trans, CongAdd, CongJoin, CongMeet, CongScale, CongDia,
    Subst,
  };
  Kind kind = Kind::Refl;
  std::string axiom_id;
  std::string label = kDefaultLabel;  // modal axiom instances
  Substitution subst;                 // Axiom / Subst
  std::map<std::string, Rational> scalars;  // Axiom
  int ref1 = 0, ref2 = 0;
  Rational coeff;                     // CongScale
  std::string dia_label = kDefaultLabel;  // CongDia
};

struct Step {
  int number;
  Equation eq;
  Justification just;
  int line = 0;
};

struct Derivation {
  std::vector<std::string> vars;
  std::vector<Step> steps;
};

enum class ProofErrorKind {
  UnknownAxiom,     // justification names no catalogue axiom
  SideCondition,    // scalar schema instantiated outside its side condition
  ForwardReference, // step cites itself or a later / unknown step
  Mismatch,         // claimed equation differs from the rule's conclusion
};

inline const char* proof_error_kind_str(ProofErrorKind k) {
  switch (k) {
    case ProofErrorKind::UnknownAxiom: return "unknown-axiom";
    case ProofErrorKind::SideCondition: return "side-condition";
    case ProofErrorKind::ForwardReference: return "forward-reference";
    case ProofErrorKind::Mismatch: return "mismatch";
  }
  return "?";
}

struct CheckError {
  int step = 0;
  ProofErrorKind kind = ProofErrorKind::Mismatch;
  std::string message;
};

struct CheckResult {
  bool ok = false;
  Equation proven;          // when ok
  CheckError error;         // when !ok
};

namespace detail {

/// Where two formulas first disagree, as a path of child indices.
inline bool diff_path(const Formula& expected, const Formula& found,
                      std::string& path) {
  if (expected == found) return false;
  if (expected.kind() == found.kind()) {
    switch (expected.kind()) {
      case FKind::Scale:
        if (expected.coeff() == found.coeff() &&
            diff_path(expected.child(), found.child(), path)) {
          path = ".0" + path;
          return true;
        }
        break;
      case FKind::Dia:
        if (expected.label() == found.label() &&
            diff_path(expected.child(), found.child(), path)) {
          path = ".0" + path;
          return true;
        }
        break;
      case FKind::Add:
      case FKind::Join:
      case FKind::Meet:
        if (expected.lhs() == found.lhs()) {
          if (diff_path(expected.rhs(), found.rhs(), path)) {
            path = ".1" + path;
            return true;
          }
        } else if (expected.rhs() == found.rhs()) {
          if (diff_path(expected.lhs(), found.lhs(), path)) {
            path = ".0" + path;
            return true;
          }
        }
        break;
      default:
        break;
    }
  }
  path += ": expected `" + print(expected) + "`, found `" + print(found) + "`";
  return true;
}

inline std::string side_diff(const char* side, const Formula& expected,
                             const Formula& found) {
  std::string path;
  diff_path(expected, found, path);
  return std::string(side) + path;
}

}  // namespace detail

/// Validates every step; on success the final step's equation is the proven
/// judgement. Justifications may cite only earlier steps.
inline CheckResult check(const Derivation& d) {
  auto fail = [](int step, ProofErrorKind kind, const std::string& msg) {
    return CheckResult{false, {}, CheckError{step, kind, msg}};
  };
  if (d.steps.empty())
    return fail(0, ProofErrorKind::Mismatch, "derivation has no steps");

  for (size_t i = 0; i < d.steps.size(); ++i) {
    const Step& st = d.steps[i];
    const Equation& eq = st.eq;
    auto mismatch = [&](const Equation& expected) {
      std::string msg;
      if (expected.lhs != eq.lhs)
        msg = detail::side_diff("lhs", expected.lhs, eq.lhs);
      else
        msg = detail::side_diff("rhs", expected.rhs, eq.rhs);
      return fail(st.number, ProofErrorKind::Mismatch, msg);
    };
    auto get_ref = [&](int ref) -> const Step* {
      if (ref < 1 || ref >= st.number) return nullptr;
      return &d.steps[ref - 1];
    };

    switch (st.just.kind) {
      case Justification::Kind::Refl: {
        if (eq.lhs != eq.rhs)
          return fail(st.number, ProofErrorKind::Mismatch,
                      "reflexivity needs identical sides");
        break;
      }
      case Justification::Kind::Axiom: {
        const AxiomSchema* ax = find_axiom(st.just.axiom_id);
        if (ax == nullptr)
          return fail(st.number, ProofErrorKind::UnknownAxiom,
                      "unknown axiom '" + st.just.axiom_id + "'");
        if (!ax->modal && st.just.label != kDefaultLabel)
          return fail(st.number, ProofErrorKind::Mismatch,
                      "axiom '" + ax->id + "' takes no label");
        for (const auto& p : ax->scalar_params)
          if (!st.just.scalars.count(p))
            return fail(st.number, ProofErrorKind::Mismatch,
                        "axiom '" + ax->id + "' needs scalar parameter '" +
                            p + "'");
        for (const auto& [name, value] : st.just.scalars)
          if (std::find(ax->scalar_params.begin(), ax->scalar_params.end(),
                        name) == ax->scalar_params.end())
            return fail(st.number, ProofErrorKind::Mismatch,
                        "axiom '" + ax->id + "' has no scalar parameter '" +
                            name + "'");
        if (ax->nonneg_scalar &&
            st.just.scalars.at(ax->scalar_params[0]) < 0)
          return fail(st.number, ProofErrorKind::SideCondition,
                      "axiom '" + ax->id + "' requires " +
                          ax->scalar_params[0] + " >= 0, got " +
                          rat_str(st.just.scalars.at(ax->scalar_params[0])));
        for (const auto& v : ax->vars)
          if (!st.just.subst.vars.count(v))
            return fail(st.number, ProofErrorKind::Mismatch,
                        "axiom '" + ax->id + "' needs a binding for '" + v +
                            "'");
        for (const auto& [name, value] : st.just.subst.vars)
          if (std::find(ax->vars.begin(), ax->vars.end(), name) ==
              ax->vars.end())
            return fail(st.number, ProofErrorKind::Mismatch,
                        "axiom '" + ax->id + "' has no variable '" + name +
                            "'");
        Equation skel = ax->instantiate(st.just.scalars, st.just.label);
        Equation expected{substitute(skel.lhs, st.just.subst.vars),
                          substitute(skel.rhs, st.just.subst.vars)};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
      case Justification::Kind::Sym: {
        const Step* r = get_ref(st.just.ref1);
        if (!r)
          return fail(st.number, ProofErrorKind::ForwardReference,
                      "step " + std::to_string(st.just.ref1) +
                          " is not an earlier step");
        Equation expected{r->eq.rhs, r->eq.lhs};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
      case Justification::Kind::Trans: {
        const Step* r1 = get_ref(st.just.ref1);
        const Step* r2 = get_ref(st.just.ref2);
        if (!r1 || !r2)
          return fail(st.number, ProofErrorKind::ForwardReference,
                      "step " +
                          std::to_string(!r1 ? st.just.ref1 : st.just.ref2) +
                          " is not an earlier step");
        if (r1->eq.rhs != r2->eq.lhs)
          return fail(st.number, ProofErrorKind::Mismatch,
                      "middle terms differ: `" + print(r1->eq.rhs) +
                          "` vs `" + print(r2->eq.lhs) + "`");
        Equation expected{r1->eq.lhs, r2->eq.rhs};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
      case Justification::Kind::CongAdd:
      case Justification::Kind::CongJoin:
      case Justification::Kind::CongMeet: {
        const Step* r1 = get_ref(st.just.ref1);
        const Step* r2 = get_ref(st.just.ref2);
        if (!r1 || !r2)
          return fail(st.number, ProofErrorKind::ForwardReference,
                      "step " +
                          std::to_string(!r1 ? st.just.ref1 : st.just.ref2) +
                          " is not an earlier step");
        auto mk = [&](const Formula& a, const Formula& b) {
          switch (st.just.kind) {
            case Justification::Kind::CongAdd: return Formula::add(a, b);
            case Justification::Kind::CongJoin: return Formula::join(a, b);
            default: return Formula::meet(a, b);
          }
        };
        Equation expected{mk(r1->eq.lhs, r2->eq.lhs), mk(r1->eq.rhs, r2->eq.rhs)};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
      case Justification::Kind::CongScale: {
        const Step* r = get_ref(st.just.ref1);
        if (!r)
          return fail(st.number, ProofErrorKind::ForwardReference,
                      "step " + std::to_string(st.just.ref1) +
                          " is not an earlier step");
        Equation expected{Formula::scale(st.just.coeff, r->eq.lhs),
                          Formula::scale(st.just.coeff, r->eq.rhs)};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
      case Justification::Kind::CongDia: {
        const Step* r = get_ref(st.just.ref1);
        if (!r)
          return fail(st.number, ProofErrorKind::ForwardReference,
                      "step " + std::to_string(st.just.ref1) +
                          " is not an earlier step");
        Equation expected{Formula::dia(st.just.dia_label, r->eq.lhs),
                          Formula::dia(st.just.dia_label, r->eq.rhs)};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
      case Justification::Kind::Subst: {
        const Step* r = get_ref(st.just.ref1);
        if (!r)
          return fail(st.number, ProofErrorKind::ForwardReference,
                      "step " + std::to_string(st.just.ref1) +
                          " is not an earlier step");
        Equation expected{substitute(r->eq.lhs, st.just.subst.vars),
                          substitute(r->eq.rhs, st.just.subst.vars)};
        if (!(expected == eq)) return mismatch(expected);
        break;
      }
    }
  }
  return CheckResult{true, d.steps.back().eq, {}};
}

// ---------------------------------------------------------------------------
// Derivation file format
//
//   # comment
//   vars x, y
//   step 1: <formula> = <formula> by axiom <id>[@label] [x := <f>, r := 1/2]
//   step 2: ... by refl | sym N | trans N M | subst N [x := <f>]
//                 | cong add N M | cong join N M | cong meet N M
//                 | cong scale Q N | cong dia [label] N
//
// Step numbers are consecutive from 1. Scalar parameters are bound like
// variables; their right-hand side must be a plain rational.
// ---------------------------------------------------------------------------

struct ProofParseError : std::runtime_error {
  ProofParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line(line) {}
  int line;
};

namespace detail {

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words{
      "vars", "step", "by", "axiom", "refl", "sym", "trans", "cong", "subst",
  };
  return words;
}

class DerivationParser {
 public:
  explicit DerivationParser(const std::string& text) : toks_(lex(text)) {}

  Derivation parse() {
    Derivation d;
    if (at_ident("vars")) {
      take();
      while (peek().type == Tok::Ident && !at_ident("step")) {
        std::string name = take().text;
        if (reserved_words().count(name))
          throw ProofParseError(prev().line,
                                "'" + name + "' cannot be a variable name");
        d.vars.push_back(name);
        var_set_.insert(name);
        if (peek().type == Tok::Comma) take();
      }
    }
    int expected_number = 1;
    while (peek().type != Tok::End) {
      d.steps.push_back(parse_step(expected_number));
      ++expected_number;
    }
    if (d.steps.empty()) throw ProofParseError(1, "no steps in derivation");
    return d;
  }

 private:
  bool at_ident(const char* word) const {
    return peek().type == Tok::Ident && peek().text == word;
  }
  const Token& peek(size_t ahead = 0) const {
    size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ProofParseError(peek().line, msg + " (found '" +
                                           (peek().type == Tok::End
                                                ? "end of file"
                                                : peek().text) +
                                           "')");
  }

  void expect(Tok t, const char* what) {
    if (peek().type != t) fail(std::string("expected ") + what);
    take();
  }

  int take_int(const char* what) {
    if (peek().type != Tok::Number) fail(std::string("expected ") + what);
    const Token& t = take();
    if (t.value.get_den() != 1) fail(std::string("expected integer ") + what);
    return static_cast<int>(t.value.get_num().get_si());
  }

  Formula parse_formula_here() {
    FormulaParser p(toks_, pos_, &var_set_, false);
    ExtFormula e = [&] {
      try {
        return p.parse();
      } catch (const ParseError& err) {
        throw ProofParseError(err.line, err.what());
      }
    }();
    pos_ = p.pos();
    return expand(e);
  }

  Rational parse_scalar_here() {
    bool neg = false;
    if (peek().type == Tok::Minus) {
      take();
      neg = true;
    }
    if (peek().type != Tok::Number) fail("expected rational");
    Rational q = take().value;
    return neg ? Rational(-q) : q;
  }

  std::string parse_dashed_id() {
    if (peek().type != Tok::Ident) fail("expected axiom name");
    std::string id = take().text;
    while (peek().type == Tok::Minus &&
           (peek(1).type == Tok::Ident || peek(1).type == Tok::Number)) {
      take();
      id += "-" + take().text;
    }
    return id;
  }

  /// [x := f, r := 1/2, ...]; scalar parameters of `ax` bind rationals.
  void parse_bindings(Justification& j, const AxiomSchema* ax) {
    expect(Tok::LBracket, "'['");
    if (peek().type == Tok::RBracket) {
      take();
      return;
    }
    for (;;) {
      if (peek().type != Tok::Ident) fail("expected binding name");
      std::string name = take().text;
      expect(Tok::Assign, "':='");
      bool is_scalar =
          ax != nullptr &&
          std::find(ax->scalar_params.begin(), ax->scalar_params.end(),
                    name) != ax->scalar_params.end();
      if (is_scalar)
        j.scalars[name] = parse_scalar_here();
      else
        j.subst.vars.emplace(name, parse_formula_here());
      if (peek().type == Tok::Comma) {
        take();
        continue;
      }
      expect(Tok::RBracket, "']' or ','");
      return;
    }
  }

  Step parse_step(int expected_number) {
    int line = peek().line;
    if (!at_ident("step")) fail("expected 'step'");
    take();
    int num = take_int("step number");
    if (num != expected_number)
      throw ProofParseError(line, "steps must be numbered consecutively; "
                                  "expected " +
                                      std::to_string(expected_number) +
                                      ", got " + std::to_string(num));
    expect(Tok::Colon, "':'");
    Formula lhs = parse_formula_here();
    expect(Tok::Equals, "'='");
    Formula rhs = parse_formula_here();
    if (!at_ident("by")) fail("expected 'by'");
    take();

    Justification j;
    if (peek().type != Tok::Ident) fail("expected justification");
    std::string word = take().text;
    if (word == "axiom") {
      j.kind = Justification::Kind::Axiom;
      j.axiom_id = parse_dashed_id();
      if (peek().type == Tok::At) {
        take();
        if (peek().type != Tok::Ident) fail("expected label after '@'");
        j.label = take().text;
      }
      const AxiomSchema* ax = find_axiom(j.axiom_id);  // may be null; check() reports it
      if (peek().type == Tok::LBracket) parse_bindings(j, ax);
    } else if (word == "refl") {
      j.kind = Justification::Kind::Refl;
    } else if (word == "sym") {
      j.kind = Justification::Kind::Sym;
      j.ref1 = take_int("step reference");
    } else if (word == "trans") {
      j.kind = Justification::Kind::Trans;
      j.ref1 = take_int("step reference");
      j.ref2 = take_int("step reference");
    } else if (word == "subst") {
      j.kind = Justification::Kind::Subst;
      j.ref1 = take_int("step reference");
      if (peek().type == Tok::LBracket) parse_bindings(j, nullptr);
    } else if (word == "cong") {
      if (peek().type != Tok::Ident && peek().type != Tok::Number &&
          peek().type != Tok::Minus)
        fail("expected congruence constructor");
      if (peek().type == Tok::Ident) {
        std::string ctor = take().text;
        if (ctor == "add") {
          j.kind = Justification::Kind::CongAdd;
          j.ref1 = take_int("step reference");
          j.ref2 = take_int("step reference");
        } else if (ctor == "join") {
          j.kind = Justification::Kind::CongJoin;
          j.ref1 = take_int("step reference");
          j.ref2 = take_int("step reference");
        } else if (ctor == "meet") {
          j.kind = Justification::Kind::CongMeet;
          j.ref1 = take_int("step reference");
          j.ref2 = take_int("step reference");
        } else if (ctor == "scale") {
          j.kind = Justification::Kind::CongScale;
          j.coeff = parse_scalar_here();
          j.ref1 = take_int("step reference");
        } else if (ctor == "dia") {
          j.kind = Justification::Kind::CongDia;
          if (peek().type == Tok::Ident) j.dia_label = take().text;
          j.ref1 = take_int("step reference");
        } else {
          throw ProofParseError(prev().line,
                                "unknown congruence constructor '" + ctor + "'");
        }
      } else {
        fail("expected one of add/join/meet/scale/dia");
      }
    } else {
      throw ProofParseError(line, "unknown justification '" + word + "'");
    }
    return Step{num, Equation{std::move(lhs), std::move(rhs)}, std::move(j),
                line};
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> var_set_;
};

}  // namespace detail

inline Derivation parse_derivation(const std::string& text) {
  return detail::DerivationParser(text).parse();
}

// ---------------------------------------------------------------------------
// Randomized soundness probing
// ---------------------------------------------------------------------------

struct FuzzViolation {
  std::map<std::string, Formula> instantiation;
  std::string model_desc;  // state id or the symbolic point
  Rational value1, value2;
};

/// Instantiates the equation's variables with closed formulas (stock
/// witnesses first, then random draws), evaluates both sides on the stock
/// processes, fresh random processes and the symbolic unit-interval process,
/// and reports the first exact disagreement.
inline std::optional<FuzzViolation> soundness_fuzz(const Equation& eq,
                                                   int trials, uint64_t seed) {
  std::set<std::string> var_set;
  eq.lhs.collect_vars(var_set);
  eq.rhs.collect_vars(var_set);
  std::vector<std::string> vars(var_set.begin(), var_set.end());

  std::vector<Formula> seeds = seed_formulas();
  std::vector<MarkovProcess> stock = seed_models();
  Rng rng(seed);

  for (int t = 0; t < trials; ++t) {
    std::map<std::string, Formula> inst;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (t < static_cast<int>(seeds.size()))
        inst[vars[i]] = seeds[(t + i) % seeds.size()];
      else
        inst[vars[i]] = random_formula(rng, 2, {kDefaultLabel});
    }
    Formula lhs = substitute(eq.lhs, inst);
    Formula rhs = substitute(eq.rhs, inst);

    std::set<std::string> labels_set;
    lhs.collect_labels(labels_set);
    rhs.collect_labels(labels_set);
    if (labels_set.empty()) labels_set.insert(kDefaultLabel);
    std::vector<std::string> labels(labels_set.begin(), labels_set.end());
    bool tau_only = labels.size() == 1 && labels[0] == kDefaultLabel;

    auto report = [&](const std::string& where, const Rational& a,
                      const Rational& b) {
      return FuzzViolation{inst, where, a, b};
    };

    for (const auto& m : stock) {
      EquivReport r = equiv_on_model(lhs, rhs, m);
      if (!r.equal)
        return report("state " + std::get<0>(*r.witness),
                      std::get<1>(*r.witness), std::get<2>(*r.witness));
    }
    for (int k = 0; k < 2; ++k) {
      MarkovProcess m = random_model(rng, 6, labels);
      EquivReport r = equiv_on_model(lhs, rhs, m);
      if (!r.equal)
        return report("state " + std::get<0>(*r.witness),
                      std::get<1>(*r.witness), std::get<2>(*r.witness));
    }
    if (tau_only) {
      auto w = pp_diff_witness(eval_symbolic(lhs), eval_symbolic(rhs));
      if (w)
        return report("unit-interval point " + rat_str(*w),
                      eval_pointwise(lhs, *w), eval_pointwise(rhs, *w));
    }
  }
  return std::nullopt;
}

}  // namespace riesz

#endif  // RIESZ_PROOFS_HPP_
