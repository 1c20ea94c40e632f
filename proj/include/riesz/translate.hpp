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
#ifndef RIESZ_TRANSLATE_HPP_
#define RIESZ_TRANSLATE_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "riesz/formula.hpp"

namespace riesz {

/// Front-end tree for the Lukasiewicz / truncated-subtraction connectives.
/// These exist only between the parser and expand(); the core Formula never
/// stores them.
class ExtFormula {
 public:
  enum class Kind {
    Zero, One, Scale, Add, Join, Meet, Dia, Var,
    OPlus,   // f (+) g  =  1 ^ (f + g)
    OTimes,  // f (.) g  =  0 v (f + g - 1)
    OMinus,  // f (-) r  =  0 v (f - r*1),  r in [0,1]
  };

  static ExtFormula zero() { return ExtFormula(Kind::Zero); }
  static ExtFormula one() { return ExtFormula(Kind::One); }
  static ExtFormula var(const std::string& name) {
    ExtFormula f(Kind::Var);
    f.name_ = name;
    return f;
  }
  static ExtFormula scale(const Rational& r, ExtFormula f) {
    ExtFormula e(Kind::Scale);
    e.coeff_ = r;
    e.left_ = wrap(std::move(f));
    return e;
  }
  static ExtFormula dia(const std::string& label, ExtFormula f) {
    ExtFormula e(Kind::Dia);
    e.name_ = label;
    e.left_ = wrap(std::move(f));
    return e;
  }
  static ExtFormula binary(Kind k, ExtFormula a, ExtFormula b) {
    ExtFormula e(k);
    e.left_ = wrap(std::move(a));
    e.right_ = wrap(std::move(b));
    return e;
  }
  static ExtFormula ominus(ExtFormula f, const Rational& r) {
    ExtFormula e(Kind::OMinus);
    e.coeff_ = r;
    e.left_ = wrap(std::move(f));
    return e;
  }

  Kind kind() const { return kind_; }
  const Rational& coeff() const { return coeff_; }
  const std::string& name() const { return name_; }
  const ExtFormula& left() const { return *left_; }
  const ExtFormula& right() const { return *right_; }

 private:
  explicit ExtFormula(Kind k) : kind_(k) {}
  static std::shared_ptr<const ExtFormula> wrap(ExtFormula f) {
    return std::make_shared<const ExtFormula>(std::move(f));
  }

  Kind kind_;
  Rational coeff_;
  std::string name_;
  std::shared_ptr<const ExtFormula> left_, right_;
};

/// Rewrites the extended connectives into the core language:
///   f (+) g -> 1 ^ (f + g)
///   f (.) g -> 0 v (f + g + (-1)*1)
///   f (-) r -> 0 v (f + (-r)*1)
/// The truncated-subtraction coefficient must lie in [0,1].
inline Formula expand(const ExtFormula& e) {
  using K = ExtFormula::Kind;
  switch (e.kind()) {
    case K::Zero:
      return Formula::zero();
    case K::One:
      return Formula::one();
    case K::Var:
      return Formula::var(e.name());
    case K::Scale:
      return Formula::scale(e.coeff(), expand(e.left()));
    case K::Dia:
      return Formula::dia(e.name(), expand(e.left()));
    case K::Add:
      return Formula::add(expand(e.left()), expand(e.right()));
    case K::Join:
      return Formula::join(expand(e.left()), expand(e.right()));
    case K::Meet:
      return Formula::meet(expand(e.left()), expand(e.right()));
    case K::OPlus:
      return Formula::meet(Formula::one(),
                           Formula::add(expand(e.left()), expand(e.right())));
    case K::OTimes:
      return Formula::join(
          Formula::zero(),
          Formula::add(Formula::add(expand(e.left()), expand(e.right())),
                       Formula::neg(Formula::one())));
    case K::OMinus: {
      if (e.coeff() < 0 || e.coeff() > 1)
        throw std::invalid_argument(
            "truncated subtraction needs a coefficient in [0,1], got " +
            rat_str(e.coeff()));
      return Formula::join(
          Formula::zero(),
          Formula::add(expand(e.left()),
                       Formula::scale(-e.coeff(), Formula::one())));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace riesz

#endif  // RIESZ_TRANSLATE_HPP_
