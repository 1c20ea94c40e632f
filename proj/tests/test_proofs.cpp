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

#include <fstream>
#include <sstream>

#include "riesz/proofs.hpp"

using namespace riesz;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& rel) {
  return std::string(RIESZ_CORPUS_DIR) + "/" + rel;
}

}  // namespace

TEST_CASE("catalogue holds exactly the expected axioms") {
  const auto& cat = axiom_catalogue();
  CHECK(cat.size() == 22);
  int inequalities = 0, schemas = 0, modal = 0;
  for (const auto& a : cat) {
    if (a.inequality) ++inequalities;
    if (!a.scalar_params.empty()) ++schemas;
    if (a.modal) ++modal;
  }
  CHECK(inequalities == 5);  // compat x2, positive unit, modal positivity, 1-dec
  CHECK(schemas == 5);
  CHECK(modal == 3);
}

TEST_CASE("catalogue lookups") {
  const AxiomSchema* abs1 = find_axiom("lattice-absorption-1");
  REQUIRE(abs1 != nullptr);
  Equation eq = abs1->instantiate({}, kDefaultLabel);
  Formula z = Formula::var("z"), y = Formula::var("y");
  CHECK(eq.lhs == Formula::join(z, Formula::meet(z, y)));
  CHECK(eq.rhs == z);

  const AxiomSchema* dec = find_axiom("modal-1-decreasing");
  REQUIRE(dec != nullptr);
  Equation d = dec->instantiate({}, kDefaultLabel);
  // <>1 <= 1 carried as <>1 /\ 1 = <>1
  CHECK(d.lhs == Formula::meet(Formula::dia(Formula::one()), Formula::one()));
  CHECK(d.rhs == Formula::dia(Formula::one()));

  const AxiomSchema* sc = find_axiom("scalar-compat");
  REQUIRE(sc != nullptr);
  CHECK_THROWS_AS(sc->instantiate({{"r", Rational(-1)}}, kDefaultLabel),
                  std::domain_error);
  CHECK_NOTHROW(sc->instantiate({{"r", Rational(2)}}, kDefaultLabel));
  CHECK(find_axiom("modal-join-distrib") == nullptr);
}

TEST_CASE("inequality encoding round-trips over the catalogue") {
  Rng rng(1);
  for (const auto& ax : axiom_catalogue()) {
    std::map<std::string, Rational> scalars;
    for (const auto& p : ax.scalar_params)
      scalars[p] = ax.nonneg_scalar ? rat_abs(rng.small_rational(5, 3))
                                    : rng.small_rational(5, 3);
    if (!ax.inequality) continue;
    auto [a, b] = ax.sides(scalars, kDefaultLabel);
    Equation enc = encode_leq(a, b);
    CHECK(enc == ax.instantiate(scalars, kDefaultLabel));
    auto dec = decode_leq(enc);
    REQUIRE(dec.has_value());
    CHECK(dec->first == a);
    CHECK(dec->second == b);
  }
  // Plain equations do not decode as inequalities.
  CHECK(!decode_leq(Equation{Formula::one(), Formula::one()}).has_value());
}

TEST_CASE("modal axioms instantiate per label") {
  const AxiomSchema* lin = find_axiom("modal-linearity");
  Equation eq = lin->instantiate({{"r1", Rational(1)}, {"r2", Rational(1)}}, "a");
  std::set<std::string> labels;
  eq.lhs.collect_labels(labels);
  CHECK(labels == std::set<std::string>{"a"});
}

TEST_CASE("a small derivation checks end to end") {
  Derivation d = parse_derivation(R"(
vars x, y
step 1: <>(1*x + 1*y) = 1*<>x + 1*<>y by axiom modal-linearity [r1 := 1, r2 := 1, x := x, y := y]
step 2: 1*<>x = <>x by axiom scalar-unit [x := <>x]
step 3: 1*<>y = <>y by axiom scalar-unit [x := <>y]
step 4: 1*<>x + 1*<>y = <>x + <>y by cong add 2 3
step 5: <>(1*x + 1*y) = <>x + <>y by trans 1 4
)");
  CheckResult r = check(d);
  REQUIRE(r.ok);
  CHECK(equation_str(r.proven) == "<>(1*x + 1*y) = <>x + <>y");
}

TEST_CASE("reflexivity without axioms") {
  CheckResult r = check(parse_derivation("vars x\nstep 1: x = x by refl"));
  CHECK(r.ok);
  CheckResult bad =
      check(parse_derivation("vars x, y\nstep 1: x = y by refl"));
  CHECK(!bad.ok);
  CHECK(bad.error.kind == ProofErrorKind::Mismatch);
}

TEST_CASE("claiming the false distribution law as an axiom is rejected") {
  Derivation d = parse_derivation(
      "vars x, y\n"
      "step 1: <>(x \\/ y) = <>x \\/ <>y by axiom modal-join-distrib "
      "[x := x, y := y]\n");
  CheckResult r = check(d);
  REQUIRE(!r.ok);
  CHECK(r.error.kind == ProofErrorKind::UnknownAxiom);
  CHECK(r.error.step == 1);
}

TEST_CASE("substitution mismatches report a path") {
  Derivation d = parse_derivation(
      "vars x, y\n"
      "step 1: x + y = y + y by axiom add-comm [x := x, y := y]\n");
  CheckResult r = check(d);
  REQUIRE(!r.ok);
  CHECK(r.error.kind == ProofErrorKind::Mismatch);
  CHECK(r.error.message.find("expected") != std::string::npos);
  CHECK(r.error.message.find("found") != std::string::npos);
}

TEST_CASE("the shipped derivation corpus checks OK") {
  const char* files[] = {
      "derivations/d01_refl.drv",
      "derivations/d02_join_comm.drv",
      "derivations/d03_scale_zero.drv",
      "derivations/d04_half_split.drv",
      "derivations/d05_dia_additive.drv",
      "derivations/d06_dia_scale.drv",
      "derivations/d07_labelled_meet.drv",
      "derivations/d08_add_join_translate.drv",
      "derivations/d09_posneg_split.drv",
      "derivations/d10_abs_dia_bound.drv",
  };
  for (const char* f : files) {
    CAPTURE(f);
    CheckResult r = check(parse_derivation(slurp(corpus(f))));
    CHECK(r.ok);
  }
}

TEST_CASE("the corrupted corpus fails at the corrupted step") {
  struct Expected {
    const char* file;
    int step;
    ProofErrorKind kind;
  } expected[] = {
      {"derivations/bad/bad01_unknown_axiom.drv", 1,
       ProofErrorKind::UnknownAxiom},
      {"derivations/bad/bad02_wrong_axiom_instance.drv", 4,
       ProofErrorKind::Mismatch},
      {"derivations/bad/bad03_forward_reference.drv", 2,
       ProofErrorKind::ForwardReference},
      {"derivations/bad/bad04_side_condition.drv", 1,
       ProofErrorKind::SideCondition},
      {"derivations/bad/bad05_broken_transitivity.drv", 3,
       ProofErrorKind::Mismatch},
  };
  for (const auto& e : expected) {
    CAPTURE(e.file);
    CheckResult r = check(parse_derivation(slurp(corpus(e.file))));
    REQUIRE(!r.ok);
    CHECK(r.error.step == e.step);
    CHECK(r.error.kind == e.kind);
  }
}

TEST_CASE("derivation files with malformed syntax are rejected") {
  CHECK_THROWS_AS(parse_derivation("step 2: x = x by refl"), ProofParseError);
  CHECK_THROWS_AS(parse_derivation("vars x\nstep 1: x = x by banana"),
                  ProofParseError);
  CHECK_THROWS_AS(parse_derivation("vars by\nstep 1: by = by by refl"),
                  ProofParseError);
  CHECK_THROWS_AS(parse_derivation(""), ProofParseError);
}

TEST_CASE("every catalogue axiom survives fuzzing") {
  Rng rng(7);
  for (const auto& ax : axiom_catalogue()) {
    std::map<std::string, Rational> scalars;
    for (const auto& p : ax.scalar_params)
      scalars[p] = ax.nonneg_scalar ? rat_abs(rng.small_rational(4, 3))
                                    : rng.small_rational(4, 3);
    Equation eq = ax.instantiate(scalars, kDefaultLabel);
    auto violation = soundness_fuzz(eq, 200, 99);
    CHECK(!violation.has_value());
  }
}

TEST_CASE("fuzzing finds the branching countermodel for join distribution") {
  Formula x = Formula::var("x"), y = Formula::var("y");
  Equation eq{Formula::dia(Formula::join(x, y)),
              Formula::join(Formula::dia(x), Formula::dia(y))};
  auto violation = soundness_fuzz(eq, 20, 1);
  REQUIRE(violation.has_value());
  // The stock witnesses x := <>1, y := 1 - <>1 are tried first, so the
  // violation surfaces on the very first trial, at the branching state.
  CHECK(violation->instantiation.at("x") == Formula::dia(Formula::one()));
  CHECK(violation->value1 != violation->value2);
}

TEST_CASE("checked conclusions pass fuzzing (soundness bridge)") {
  const char* files[] = {
      "derivations/d03_scale_zero.drv",
      "derivations/d05_dia_additive.drv",
      "derivations/d06_dia_scale.drv",
      "derivations/d08_add_join_translate.drv",
      "derivations/d09_posneg_split.drv",
      "derivations/d10_abs_dia_bound.drv",
  };
  for (const char* f : files) {
    CAPTURE(f);
    CheckResult r = check(parse_derivation(slurp(corpus(f))));
    REQUIRE(r.ok);
    CHECK(!soundness_fuzz(r.proven, 12, 5).has_value());
  }
}
