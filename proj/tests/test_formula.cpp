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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/formula.hpp"
#include "riesz/parse.hpp"
#include "riesz/sampler.hpp"
#include "riesz/semantics.hpp"

using namespace riesz;

TEST_CASE("rational parsing and canonical text") {
  CHECK(rat_str(*parse_rational("8/18")) == "4/9");
  CHECK(rat_str(*parse_rational("0.25")) == "1/4");
  CHECK(rat_str(*parse_rational("-1.5")) == "-3/2");
  CHECK(rat_str(*parse_rational("7")) == "7");
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("1.2.3").has_value());
  CHECK(!parse_rational("x").has_value());
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_in_interval(make_rational(1, 4), make_rational(3, 4)) ==
        make_rational(1, 2));
  CHECK(simplest_in_interval(make_rational(-1, 10), make_rational(1, 10)) == 0);
  CHECK(simplest_in_interval(make_rational(31, 100), make_rational(35, 100)) ==
        make_rational(1, 3));
  CHECK(simplest_in_interval(make_rational(5, 2), make_rational(7, 2)) == 3);
  // Negative interval mirrors the positive case.
  CHECK(simplest_in_interval(make_rational(-35, 100), make_rational(-31, 100)) ==
        make_rational(-1, 3));
}

TEST_CASE("atoms parse to the dedicated constructors") {
  CHECK(parse("1") == Formula::one());
  CHECK(parse("0") == Formula::zero());
  CHECK(parse("<>(<>(1))") == Formula::dia(Formula::dia(Formula::one())));
  CHECK(parse("<><>1") == Formula::dia(Formula::dia(Formula::one())));
}

TEST_CASE("literals, scaling and sugar desugar to the core constructors") {
  Formula f = parse("(1/3)*<>1 + (-1)*0");
  Formula expected = Formula::add(
      Formula::scale(make_rational(1, 3), Formula::dia(Formula::one())),
      Formula::scale(-1, Formula::zero()));
  CHECK(f == expected);
  // Pretty-print and re-parse reproduces the same tree.
  CHECK(parse(print(f)) == f);

  CHECK(parse("2") == Formula::scale(2, Formula::one()));
  std::set<std::string> xy{"x", "y"};
  CHECK(parse_open("x - y", xy) == parse_open("x + (-1)*y", xy));
}

TEST_CASE("absolute value desugars to positive plus negative part") {
  Formula f = parse("|<>1|");
  Formula d = Formula::dia(Formula::one());
  CHECK(f == Formula::add(Formula::pos_part(d), Formula::neg_part(d)));
}

TEST_CASE("unlabelled diamond is the tau modality") {
  Formula f = parse("<tau>1");
  CHECK(f == Formula::dia(Formula::one()));
  CHECK(print(f) == "<>1");
  CHECK(print(parse("<a>1")) == "<a>1");
}

TEST_CASE("printer golden cases") {
  CHECK(print(Formula::dia(Formula::one())) == "<>1");
  CHECK(print(Formula::meet(
            Formula::one(),
            Formula::add(Formula::dia(Formula::one()),
                         Formula::dia(Formula::one())))) ==
        "1 /\\ (<>1 + <>1)");
  CHECK(print(Formula::scale(-1, Formula::dia(Formula::one()))) == "(-1)*<>1");
}

TEST_CASE("lattice operators do not mix without parentheses") {
  CHECK_THROWS_AS(parse("1 /\\ 0 \\/ 1"), ParseError);
  CHECK_NOTHROW(parse("(1 /\\ 0) \\/ 1"));
  CHECK_NOTHROW(parse("1 /\\ 0 /\\ 1"));
}

TEST_CASE("parse errors carry positions and expectations") {
  try {
    parse("1 + ");
    FAIL("should have thrown");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("q"), ParseError);        // unknown identifier
  CHECK_THROWS_AS(parse("1 +* 2"), ParseError);
  CHECK_THROWS_AS(parse("(1"), ParseError);
  try {
    parse("1/0 + 1");
    FAIL("should have thrown");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("malformed rational") !=
          std::string::npos);
  }
}

TEST_CASE("round trip on random formulas") {
  Rng rng(20260808);
  std::vector<std::string> labels{"tau", "a", "b_2"};
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 5, labels);
    CHECK(parse(print(f)) == f);
  }
}

TEST_CASE("round trip on adversarial shapes") {
  // Right-nested sums need parentheses to survive the left-associative
  // grammar; same for lattice mixes and scales of sums.
  Formula one = Formula::one(), zero = Formula::zero();
  std::vector<Formula> shapes = {
      Formula::add(one, Formula::add(one, zero)),
      Formula::add(Formula::add(one, one), zero),
      Formula::join(Formula::meet(one, zero), one),
      Formula::meet(one, Formula::join(one, zero)),
      Formula::scale(make_rational(-2, 3), Formula::add(one, one)),
      Formula::scale(2, Formula::scale(3, one)),
      Formula::dia(Formula::add(one, one)),
      Formula::dia("a", Formula::join(one, zero)),
      Formula::scale(0, one),
      Formula::scale(1, one),  // distinct from plain 1
      Formula::join(Formula::join(one, zero), Formula::join(zero, one)),
  };
  for (const auto& f : shapes) CHECK(parse(print(f)) == f);
}

TEST_CASE("modal depth follows the inductive clauses") {
  CHECK(modal_depth(parse("1")) == 0);
  CHECK(modal_depth(parse("<><>1")) == 2);
  CHECK(modal_depth(parse("(<>1) \\/ (<><>1 + 1)")) == 2);
}

TEST_CASE("modal depth of a subterm never exceeds the whole") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 5, {"tau", "a"});
    unsigned whole = modal_depth(f);
    // walk all subterms
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
      Formula g = stack.back();
      stack.pop_back();
      CHECK(modal_depth(g) <= whole);
      switch (g.kind()) {
        case FKind::Scale:
        case FKind::Dia:
          stack.push_back(g.child());
          break;
        case FKind::Add:
        case FKind::Join:
        case FKind::Meet:
          stack.push_back(g.lhs());
          stack.push_back(g.rhs());
          break;
        default:
          break;
      }
    }
  }
}

TEST_CASE("unit bound inductive cases") {
  CHECK(unit_bound(parse("1")) == 1);
  CHECK(unit_bound(parse("<>1")) == 1);
  CHECK(unit_bound(parse("2*<>1 + 1")) == 3);
  CHECK(unit_bound(parse("(-1/2)*1")) == make_rational(1, 2));
  CHECK(unit_bound(parse("1 \\/ 2*1")) == 2);
}

TEST_CASE("unit bound dominates evaluation on random models") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 4, {"tau"});
    MarkovProcess m = random_model(rng, 4, {"tau"});
    Rational b = unit_bound(f);
    for (const auto& v : eval(f, m).values) CHECK(rat_abs(v) <= b);
  }
  // The fixed bound 3 for 2*<>1 + 1, exhaustively over fresh models.
  Formula fixed = parse("2*<>1 + 1");
  REQUIRE(unit_bound(fixed) == 3);
  for (int i = 0; i < 1000; ++i) {
    MarkovProcess m = random_model(rng, 5, {"tau"});
    for (const auto& v : eval(fixed, m).values) CHECK(rat_abs(v) <= 3);
  }
}
