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
// Acceptance suite: one criterion per section, one PASS/FAIL line each, all
// comparisons exact. Returns the number of failed criteria.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "riesz/equivalence.hpp"
#include "riesz/parse.hpp"
#include "riesz/piecewise.hpp"
#include "riesz/proofs.hpp"
#include "riesz/sampler.hpp"
#include "riesz/semantics.hpp"

using namespace riesz;

namespace {

constexpr uint64_t kSeed = 20260808;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& rel) {
  return std::string(RIESZ_CORPUS_DIR) + "/" + rel;
}

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      detail = "line " + std::to_string(__LINE__) + ": " #cond; \
      return false;                                            \
    }                                                          \
  } while (0)

// 1. Stock-model goldens, exact.
bool criterion_goldens(std::string& detail) {
  MarkovProcess m2 = two_state_loop_model();
  Valuation d1 = eval(parse("<>1"), m2);
  EXPECT(d1.values[0] == make_rational(5, 6) &&
         d1.values[1] == make_rational(1, 3));
  Valuation halt = eval(parse("-(<>1) + 1"), m2);
  EXPECT(halt.values[0] == make_rational(1, 6) &&
         halt.values[1] == make_rational(2, 3));
  Valuation d2 = eval(parse("<><>1"), m2);
  EXPECT(d2.values[0] == make_rational(8, 18) &&
         d2.values[1] == make_rational(5, 18));

  MarkovProcess m3 = three_state_branch_model();
  EXPECT(eval_at(parse("<>((<>1) \\/ (1 - <>1))"), m3, "y") == 1);
  EXPECT(eval_at(parse("(<><>1) \\/ (<>(1 - <>1))"), m3, "y") ==
         make_rational(2, 3));

  PiecewisePoly ident{{}, {Poly::x()}};
  PiecewisePoly square{{}, {Poly::x() * Poly::x()}};
  EXPECT(pp_equal(eval_symbolic(parse("<>1")), ident));
  EXPECT(pp_equal(eval_symbolic(parse("<><>1")), square));
  return true;
}

// 2. Every axiom of the equational system passes 200 randomized
//    instantiations, on random finite models and on the symbolic process.
bool criterion_axiom_soundness(std::string& detail) {
  Rng rng(kSeed);
  for (const auto& ax : axiom_catalogue()) {
    for (int trial = 0; trial < 200; ++trial) {
      std::map<std::string, Rational> scalars;
      for (const auto& p : ax.scalar_params)
        scalars[p] = ax.nonneg_scalar ? rat_abs(rng.small_rational(4, 3))
                                      : rng.small_rational(4, 3);

      // Finite leg: up to 8 states, up to 2 labels, axiom diamond per label.
      std::vector<std::string> labels =
          rng.chance(1, 2) ? std::vector<std::string>{"tau", "a"}
                           : std::vector<std::string>{"tau"};
      const std::string& axl =
          labels[static_cast<size_t>(rng.below(labels.size()))];
      Equation eq = ax.instantiate(scalars, axl);
      std::set<std::string> vars;
      eq.lhs.collect_vars(vars);
      eq.rhs.collect_vars(vars);
      std::map<std::string, Formula> inst;
      for (const auto& v : vars) inst[v] = random_formula(rng, 3, labels);
      Formula lhs = substitute(eq.lhs, inst), rhs = substitute(eq.rhs, inst);
      MarkovProcess m = random_model(rng, 8, labels);
      if (eval(lhs, m) != eval(rhs, m)) {
        detail = "axiom " + ax.id + ": finite countermodel on trial " +
                 std::to_string(trial);
        return false;
      }

      // Symbolic leg: default label only.
      Equation teq = ax.instantiate(scalars, kDefaultLabel);
      std::map<std::string, Formula> tinst;
      for (const auto& v : vars)
        tinst[v] = random_formula(rng, 2, {kDefaultLabel});
      Formula tl = substitute(teq.lhs, tinst), tr = substitute(teq.rhs, tinst);
      if (!pp_equal(eval_symbolic(tl), eval_symbolic(tr))) {
        detail = "axiom " + ax.id + ": symbolic countermodel on trial " +
                 std::to_string(trial);
        return false;
      }
    }
  }
  return true;
}

// 3. The false join-distribution law is refuted within the seeded budget.
bool criterion_non_theorem(std::string& detail) {
  Formula x = Formula::var("x"), y = Formula::var("y");
  Equation eq{Formula::dia(Formula::join(x, y)),
              Formula::join(Formula::dia(x), Formula::dia(y))};
  auto violation = soundness_fuzz(eq, 10, kSeed);
  EXPECT(violation.has_value());
  EXPECT(violation->value1 != violation->value2);
  return true;
}

// 4. Partition refinement against the naive oracle; certificates for every
//    separated pair; exact agreement inside blocks.
bool criterion_bisim_oracle(std::string& detail) {
  Rng rng(kSeed);
  for (int i = 0; i < 100; ++i) {
    MarkovProcess m = random_model(rng, 6, {"tau", "a"});
    auto [p, trace] = bisim_partition(m);
    EXPECT(p == oracle::brute_force_bisim(m));
    auto of = p.block_of(m.state_count());
    for (int a = 0; a < m.state_count(); ++a)
      for (int b = a + 1; b < m.state_count(); ++b)
        if (of[a] != of[b]) {
          Formula cert =
              distinguishing_formula(m, m.states()[a], m.states()[b]);
          EXPECT(eval_at(cert, m, m.states()[a]) !=
                 eval_at(cert, m, m.states()[b]));
        }
    for (int k = 0; k < 50; ++k) {
      Formula f = random_formula(rng, 6, {"tau", "a"});
      Valuation v = eval(f, m);
      for (const auto& blk : p.blocks)
        for (size_t s = 1; s < blk.size(); ++s)
          EXPECT(v.values[blk[s]] == v.values[blk[0]]);
    }
  }
  return true;
}

// 5. Quotients by the bisimulation partition preserve every formula value.
bool criterion_quotient_invariance(std::string& detail) {
  Rng rng(kSeed + 1);
  for (int i = 0; i < 50; ++i) {
    MarkovProcess m = random_model(rng, 6, {"tau", "a"});
    auto [p, trace] = bisim_partition(m);
    auto [q, proj] = quotient(m, p);
    for (int k = 0; k < 50; ++k) {
      Formula f = random_formula(rng, 4, {"tau", "a"});
      Valuation vm = eval(f, m), vq = eval(f, q);
      for (int s = 0; s < m.state_count(); ++s)
        EXPECT(vm.values[s] == vq.values[proj[s]]);
    }
  }
  return true;
}

// 6. Symbolic semantics against the pointwise oracle, 500 pairs.
bool criterion_symbolic_oracle(std::string& detail) {
  Rng rng(kSeed + 2);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 6, {"tau"});
    PiecewisePoly pp = eval_symbolic(f);
    Rational x = rng.unit_rational(997);
    EXPECT(pp_eval(pp, x) == eval_pointwise(f, x));
  }
  return true;
}

// 7. The syntactic unit bound dominates evaluation, 500 triples.
bool criterion_unit_bound(std::string& detail) {
  Rng rng(kSeed + 3);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 5, {"tau", "a"});
    MarkovProcess m = random_model(rng, 6, {"tau", "a"});
    int s = rng.range(0, m.state_count() - 1);
    EXPECT(rat_abs(eval(f, m).values[s]) <= unit_bound(f));
  }
  return true;
}

// 8. Coefficient rounding stays within eps in norm on 100 random models.
bool criterion_rational_approx(std::string& detail) {
  Rng rng(kSeed + 4);
  for (int i = 0; i < 50; ++i) {
    Formula base = random_formula(rng, 3, {"tau"});
    std::string d1 = "0." + std::to_string(rng.range(10000000, 99999999));
    std::string d2 = "0." + std::to_string(rng.range(10000000, 99999999));
    Formula f = Formula::add(
        Formula::scale(*parse_rational(d1), base),
        Formula::dia(Formula::scale(*parse_rational(d2),
                                    Formula::join(base, Formula::one()))));
    for (const Rational& eps : {make_rational(1, 10), make_rational(1, 100)}) {
      Formula g = rational_approx(f, eps);
      Formula diff = Formula::sub(f, g);
      for (int k = 0; k < 100; ++k) {
        MarkovProcess m = random_model(rng, 5, {"tau"});
        EXPECT(norm_on_model(diff, m) <= eps);
      }
    }
  }
  return true;
}

// 9. The derivation corpus: ten valid proofs check OK, five corrupted
//    variants fail at the corrupted step with the documented error kind.
bool criterion_proof_corpus(std::string& detail) {
  const char* good[] = {
      "derivations/d01_refl.drv",          "derivations/d02_join_comm.drv",
      "derivations/d03_scale_zero.drv",    "derivations/d04_half_split.drv",
      "derivations/d05_dia_additive.drv",  "derivations/d06_dia_scale.drv",
      "derivations/d07_labelled_meet.drv", "derivations/d08_add_join_translate.drv",
      "derivations/d09_posneg_split.drv",  "derivations/d10_abs_dia_bound.drv",
  };
  for (const char* f : good) {
    CheckResult r = check(parse_derivation(slurp(corpus(f))));
    if (!r.ok) {
      detail = std::string(f) + " rejected at step " +
               std::to_string(r.error.step) + ": " + r.error.message;
      return false;
    }
  }
  // The flagship derivation proves |<>x| <= <>|x| in encoded form.
  CheckResult flagship = check(
      parse_derivation(slurp(corpus("derivations/d10_abs_dia_bound.drv"))));
  Formula dx = Formula::dia(Formula::var("x"));
  Formula absdx = Formula::abs(dx);
  Formula dabsx = Formula::dia(Formula::abs(Formula::var("x")));
  EXPECT(flagship.proven == encode_leq(absdx, dabsx));

  struct Expected {
    const char* file;
    int step;
    ProofErrorKind kind;
  } bad[] = {
      {"derivations/bad/bad01_unknown_axiom.drv", 1, ProofErrorKind::UnknownAxiom},
      {"derivations/bad/bad02_wrong_axiom_instance.drv", 4, ProofErrorKind::Mismatch},
      {"derivations/bad/bad03_forward_reference.drv", 2, ProofErrorKind::ForwardReference},
      {"derivations/bad/bad04_side_condition.drv", 1, ProofErrorKind::SideCondition},
      {"derivations/bad/bad05_broken_transitivity.drv", 3, ProofErrorKind::Mismatch},
  };
  for (const auto& e : bad) {
    CheckResult r = check(parse_derivation(slurp(corpus(e.file))));
    if (r.ok || r.error.step != e.step || r.error.kind != e.kind) {
      detail = std::string(e.file) + ": expected failure at step " +
               std::to_string(e.step) + " of kind " +
               proof_error_kind_str(e.kind);
      return false;
    }
  }
  return true;
}

// 10. The derived connectives agree with independent min/max arithmetic.
bool criterion_translation(std::string& detail) {
  Rng rng(kSeed + 5);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_unit_formula(rng, 3, {"tau"});
    Formula g = random_unit_formula(rng, 3, {"tau"});
    MarkovProcess m = random_model(rng, 6, {"tau"});
    Valuation v = eval(f, m), w = eval(g, m);
    Rational r = rng.unit_rational(32);
    std::string pf = "(" + print(f) + ")", pg = "(" + print(g) + ")";
    Valuation vplus = eval(parse_extended(pf + " (+) " + pg), m);
    Valuation vtimes = eval(parse_extended(pf + " (.) " + pg), m);
    Valuation vminus = eval(parse_extended(pf + " (-) " + rat_str(r)), m);
    for (int s = 0; s < m.state_count(); ++s) {
      EXPECT(vplus.values[s] ==
             rat_min(Rational(1), Rational(v.values[s] + w.values[s])));
      EXPECT(vtimes.values[s] ==
             rat_max(Rational(0), Rational(v.values[s] + w.values[s] - 1)));
      EXPECT(vminus.values[s] ==
             rat_max(Rational(0), Rational(v.values[s] - r)));
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
  };
  std::vector<Criterion> criteria = {
      {"1. stock-model goldens (exact)", criterion_goldens},
      {"2. axiom soundness, 200 trials each, finite + symbolic",
       criterion_axiom_soundness},
      {"3. non-theorem refuted by seeded fuzzing", criterion_non_theorem},
      {"4. bisimulation vs brute force, certificates, block agreement",
       criterion_bisim_oracle},
      {"5. quotient preserves all formula values", criterion_quotient_invariance},
      {"6. symbolic vs pointwise oracle, 500 pairs", criterion_symbolic_oracle},
      {"7. unit bound dominates evaluation, 500 triples", criterion_unit_bound},
      {"8. rational approximation within eps on 100 models",
       criterion_rational_approx},
      {"9. derivation corpus: 10 accepted, 5 rejected as documented",
       criterion_proof_corpus},
      {"10. derived connectives vs independent arithmetic, 200 trials each",
       criterion_translation},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (ok) {
      std::cout << "PASS  " << c.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL  " << c.name << "  [" << detail << "]\n";
    }
  }
  if (failures == 0)
    std::cout << "all " << criteria.size() << " criteria passed\n";
  else
    std::cout << failures << " of " << criteria.size() << " criteria failed\n";
  return failures;
}
