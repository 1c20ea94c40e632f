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

#include "riesz/parse.hpp"
#include "riesz/proofs.hpp"
#include "riesz/sampler.hpp"
#include "riesz/semantics.hpp"

using namespace riesz;

TEST_CASE("two-state loop model golden values") {
  MarkovProcess m = two_state_loop_model();
  Valuation v = eval(parse("<>1"), m);
  CHECK(v.values[0] == make_rational(5, 6));
  CHECK(v.values[1] == make_rational(1, 3));

  // Halting probability at each state.
  Valuation h = eval(parse("-(<>1) + 1"), m);
  CHECK(h.values[0] == make_rational(1, 6));
  CHECK(h.values[1] == make_rational(2, 3));

  // Probability of surviving two steps.
  Valuation vv = eval(parse("<><>1"), m);
  CHECK(vv.values[0] == make_rational(8, 18));
  CHECK(vv.values[1] == make_rational(5, 18));
}

TEST_CASE("branching state separates diamond from join") {
  MarkovProcess m = three_state_branch_model();
  Formula psi1 = parse("<>1");
  Formula psi2 = parse("1 - <>1");
  Formula inside = Formula::dia(Formula::join(psi1, psi2));
  Formula outside = Formula::join(Formula::dia(psi1), Formula::dia(psi2));
  CHECK(eval_at(inside, m, "y") == 1);
  CHECK(eval_at(outside, m, "y") == make_rational(2, 3));
}

TEST_CASE("zero evaluates to the zero valuation") {
  Rng rng(3);
  MarkovProcess m = random_model(rng, 5, {"tau"});
  for (const auto& v : eval(parse("0"), m).values) CHECK(v == 0);
}

TEST_CASE("eval_at projects eval and validates the state") {
  MarkovProcess m = two_state_loop_model();
  CHECK(eval_at(parse("<>1"), m, "x2") == make_rational(1, 3));
  CHECK(eval_at(parse("1"), m, "x1") == 1);
  CHECK_THROWS_AS(eval_at(parse("1"), m, "nope"), ModelError);

  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    MarkovProcess r = random_model(rng, 4, {"tau"});
    Formula f = random_formula(rng, 3, {"tau"});
    int s = rng.range(0, r.state_count() - 1);
    CHECK(eval_at(Formula::meet(f, f), r, r.states()[s]) ==
          eval(f, r).values[s]);
  }
}

TEST_CASE("free variables cannot be evaluated") {
  MarkovProcess m = two_state_loop_model();
  CHECK_THROWS_AS(eval(Formula::var("x"), m), std::invalid_argument);
}

TEST_CASE("every catalogue axiom holds exactly on random models") {
  Rng rng(20260808);
  std::vector<std::string> labels{"tau", "a"};
  for (const auto& ax : axiom_catalogue()) {
    for (int trial = 0; trial < 25; ++trial) {
      std::map<std::string, Rational> scalars;
      for (const auto& p : ax.scalar_params)
        scalars[p] = ax.nonneg_scalar ? rat_abs(rng.small_rational(4, 3))
                                      : rng.small_rational(4, 3);
      const std::string& label = labels[rng.range(0, 1)];
      Equation eq = ax.instantiate(scalars, label);
      std::map<std::string, Formula> inst;
      std::set<std::string> vars;
      eq.lhs.collect_vars(vars);
      eq.rhs.collect_vars(vars);
      for (const auto& v : vars) inst[v] = random_formula(rng, 3, labels);
      Formula lhs = substitute(eq.lhs, inst), rhs = substitute(eq.rhs, inst);
      MarkovProcess m = random_model(rng, 6, labels);
      CHECK(eval(lhs, m) == eval(rhs, m));
    }
  }
}

TEST_CASE("the diamond operator is linear, positive and 1-decreasing") {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    MarkovProcess m = random_model(rng, 6, {"tau"});
    int n = m.state_count();
    Valuation f, g;
    for (int s = 0; s < n; ++s) {
      f.values.push_back(rng.small_rational(8, 5));
      g.values.push_back(rng.small_rational(8, 5));
    }
    Rational r = rng.small_rational(6, 4);

    // linearity
    Valuation sum;
    for (int s = 0; s < n; ++s) sum.values.push_back(f.values[s] + g.values[s]);
    Valuation lhs = dia_apply(m, "tau", sum);
    Valuation da = dia_apply(m, "tau", f), db = dia_apply(m, "tau", g);
    for (int s = 0; s < n; ++s)
      CHECK(lhs.values[s] == da.values[s] + db.values[s]);
    Valuation scaled;
    for (int s = 0; s < n; ++s) scaled.values.push_back(r * f.values[s]);
    Valuation ls = dia_apply(m, "tau", scaled);
    for (int s = 0; s < n; ++s) CHECK(ls.values[s] == r * da.values[s]);

    // positivity
    Valuation pos;
    for (int s = 0; s < n; ++s) pos.values.push_back(rat_abs(f.values[s]));
    for (const auto& v : dia_apply(m, "tau", pos).values) CHECK(v >= 0);

    // 1-decreasing
    Valuation ones;
    ones.values.assign(n, Rational(1));
    for (const auto& v : dia_apply(m, "tau", ones).values) CHECK(v <= 1);
  }
}

TEST_CASE("absolute diamond is dominated by diamond of absolute") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 3, {"tau"});
    MarkovProcess m = random_model(rng, 6, {"tau"});
    Valuation lhs = eval(Formula::abs(Formula::dia(f)), m);
    Valuation rhs = eval(Formula::dia(Formula::abs(f)), m);
    CHECK(lhs.leq(rhs));
  }
}

TEST_CASE("diamond is monotone") {
  Rng rng(29);
  int done = 0;
  while (done < 100) {
    Formula f = random_formula(rng, 3, {"tau"});
    Formula g = random_formula(rng, 3, {"tau"});
    MarkovProcess m = random_model(rng, 5, {"tau"});
    Valuation vf = eval(f, m), vg = eval(g, m);
    if (!vf.leq(vg)) {
      // force comparability: test with f ^ g <= g instead
      f = Formula::meet(f, g);
      vf = eval(f, m);
    }
    CHECK(eval(Formula::dia(f), m).leq(eval(Formula::dia(g), m)));
    ++done;
  }
}

TEST_CASE("clamped-sum identities match independent pointwise arithmetic") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_unit_formula(rng, 3, {"tau"});
    Formula g = random_unit_formula(rng, 3, {"tau"});
    MarkovProcess m = random_model(rng, 5, {"tau"});
    Valuation v = eval(f, m), w = eval(g, m);
    Rational r = rng.unit_rational(8);

    std::string pf = "(" + print(f) + ")", pg = "(" + print(g) + ")";
    Valuation clamp_up = eval(parse("1 /\\ (" + pf + " + " + pg + ")"), m);
    Valuation clamp_dn = eval(parse("0 \\/ (" + pf + " + " + pg + " - 1)"), m);
    Valuation cut = eval(parse("0 \\/ (" + pf + " - " + rat_str(r) + "*1)"), m);
    for (int s = 0; s < m.state_count(); ++s) {
      CHECK(clamp_up.values[s] ==
            rat_min(Rational(1), Rational(v.values[s] + w.values[s])));
      CHECK(clamp_dn.values[s] ==
            rat_max(Rational(0), Rational(v.values[s] + w.values[s] - 1)));
      CHECK(cut.values[s] ==
            rat_max(Rational(0), Rational(v.values[s] - r)));
    }
  }
}

TEST_CASE("evaluation memoizes shared subtrees") {
  // A deeply shared tree is linear in the dag size; without sharing this
  // would be 2^40 node visits.
  Formula f = parse("<>1");
  for (int i = 0; i < 40; ++i) f = Formula::add(f, f);
  MarkovProcess m = two_state_loop_model();
  Valuation v = eval(f, m);
  // value = 2^40 * 5/6 at x1
  Rational expected = make_rational(5, 6) * Rational(Integer(1) << 40);
  CHECK(v.values[0] == expected);
}
