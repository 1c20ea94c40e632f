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
#ifndef RIESZ_SAMPLER_HPP_
#define RIESZ_SAMPLER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "riesz/formula.hpp"
#include "riesz/markov.hpp"
#include "riesz/rational.hpp"

namespace riesz {

/// splitmix64; self-contained so seeded runs reproduce byte-for-byte on any
/// platform, which the standard library distributions do not guarantee.
struct Rng {
  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
  bool chance(int num, int den) { return below(den) < static_cast<uint64_t>(num); }

  /// Small rational with |numerator| <= max_num, denominator <= max_den.
  Rational small_rational(int max_num, int max_den) {
    return make_rational(range(-max_num, max_num), range(1, max_den));
  }
  Rational unit_rational(int max_den) {
    int den = range(1, max_den);
    return make_rational(range(0, den), den);
  }

  uint64_t state;
};

/// The two-state process with a loop: x1 steps to itself w.p. 1/3 and to x2
/// w.p. 1/2 (halting mass 1/6); x2 steps back to x1 w.p. 1/3.
inline MarkovProcess two_state_loop_model() {
  MarkovProcess m({"x1", "x2"}, {kDefaultLabel});
  m.set_probability(kDefaultLabel, "x1", "x1", make_rational(1, 3));
  m.set_probability(kDefaultLabel, "x1", "x2", make_rational(1, 2));
  m.set_probability(kDefaultLabel, "x2", "x1", make_rational(1, 3));
  m.finalize();
  return m;
}

/// Three states: x loops w.p. 1, y branches 1/3 to x and 2/3 to z, z halts.
/// The branching state y separates <>(f v g) from <>f v <>g.
inline MarkovProcess three_state_branch_model() {
  MarkovProcess m({"x", "y", "z"}, {kDefaultLabel});
  m.set_probability(kDefaultLabel, "x", "x", 1);
  m.set_probability(kDefaultLabel, "y", "x", make_rational(1, 3));
  m.set_probability(kDefaultLabel, "y", "z", make_rational(2, 3));
  m.finalize();
  return m;
}

inline std::vector<MarkovProcess> seed_models() {
  return {two_state_loop_model(), three_state_branch_model()};
}

/// Random process: 1..max_states states, per-(label,state) mass drawn from
/// {0, 1/4, 1/2, 3/4, 1} and split over a random target set with weights of
/// bounded denominator.
inline MarkovProcess random_model(Rng& rng, int max_states,
                                  const std::vector<std::string>& labels) {
  int n = rng.range(1, max_states);
  std::vector<std::string> states;
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  MarkovProcess m(states, labels);
  for (const auto& label : labels) {
    for (int s = 0; s < n; ++s) {
      Rational mass = make_rational(rng.range(0, 4), 4);
      if (mass == 0) continue;
      int k = rng.range(1, n);
      std::vector<int> targets;
      for (int i = 0; i < n; ++i) targets.push_back(i);
      for (int i = 0; i < k; ++i)
        std::swap(targets[i], targets[rng.range(i, n - 1)]);
      targets.resize(k);
      std::vector<Rational> weights;
      Rational total = 0;
      for (int i = 0; i < k; ++i) {
        weights.push_back(make_rational(rng.range(1, 64), 64));
        total += weights.back();
      }
      for (int i = 0; i < k; ++i)
        m.set_probability(label, states[s], states[targets[i]],
                          weights[i] * mass / total);
    }
  }
  m.finalize();
  return m;
}

/// Random closed formula of tree depth <= depth over the given modality
/// labels (modal depth is bounded by the same number).
inline Formula random_formula(Rng& rng, int depth,
                              const std::vector<std::string>& labels) {
  if (depth <= 0) {
    switch (rng.range(0, 2)) {
      case 0: return Formula::zero();
      case 1: return Formula::one();
      default: return Formula::constant(rng.small_rational(4, 4));
    }
  }
  switch (rng.range(0, 9)) {
    case 0: return Formula::zero();
    case 1: return Formula::one();
    case 2: return Formula::constant(rng.small_rational(4, 4));
    case 3:
      return Formula::scale(rng.small_rational(3, 3),
                            random_formula(rng, depth - 1, labels));
    case 4:
    case 5:
      return Formula::add(random_formula(rng, depth - 1, labels),
                          random_formula(rng, depth - 1, labels));
    case 6:
      return Formula::join(random_formula(rng, depth - 1, labels),
                           random_formula(rng, depth - 1, labels));
    case 7:
      return Formula::meet(random_formula(rng, depth - 1, labels),
                           random_formula(rng, depth - 1, labels));
    default: {
      const std::string& l =
          labels[static_cast<size_t>(rng.below(labels.size()))];
      return Formula::dia(l, random_formula(rng, depth - 1, labels));
    }
  }
}

/// Random formula whose value lies in [0,1] on every model: built from 0, 1,
/// constants in [0,1], lattice combinations, diamonds and clamped sums.
inline Formula random_unit_formula(Rng& rng, int depth,
                                   const std::vector<std::string>& labels) {
  if (depth <= 0) {
    switch (rng.range(0, 2)) {
      case 0: return Formula::zero();
      case 1: return Formula::one();
      default: return Formula::constant(rng.unit_rational(4));
    }
  }
  switch (rng.range(0, 7)) {
    case 0: return Formula::one();
    case 1: return Formula::constant(rng.unit_rational(4));
    case 2:
      return Formula::scale(rng.unit_rational(4),
                            random_unit_formula(rng, depth - 1, labels));
    case 3:
      return Formula::join(random_unit_formula(rng, depth - 1, labels),
                           random_unit_formula(rng, depth - 1, labels));
    case 4:
      return Formula::meet(random_unit_formula(rng, depth - 1, labels),
                           random_unit_formula(rng, depth - 1, labels));
    case 5:
      return Formula::meet(
          Formula::one(),
          Formula::add(random_unit_formula(rng, depth - 1, labels),
                       random_unit_formula(rng, depth - 1, labels)));
    default: {
      const std::string& l =
          labels[static_cast<size_t>(rng.below(labels.size()))];
      return Formula::dia(l, random_unit_formula(rng, depth - 1, labels));
    }
  }
}

/// Instantiation candidates tried before random draws when fuzzing
/// equations; the first two are the classic witnesses that separate the
/// diamond from the lattice operations.
inline std::vector<Formula> seed_formulas() {
  Formula d1 = Formula::dia(Formula::one());
  return {
      d1,
      Formula::sub(Formula::one(), d1),  // halting probability
      Formula::one(),
      Formula::zero(),
      Formula::dia(d1),
  };
}

}  // namespace riesz

#endif  // RIESZ_SAMPLER_HPP_
