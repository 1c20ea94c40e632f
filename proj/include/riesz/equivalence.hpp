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
#ifndef RIESZ_EQUIVALENCE_HPP_
#define RIESZ_EQUIVALENCE_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "riesz/formula.hpp"
#include "riesz/markov.hpp"
#include "riesz/piecewise.hpp"
#include "riesz/rational.hpp"
#include "riesz/sampler.hpp"
#include "riesz/semantics.hpp"

namespace riesz {

struct EquivReport {
  bool equal;
  // Present iff !equal: first differing state (declared order) with both values.
  std::optional<std::tuple<std::string, Rational, Rational>> witness;
};

/// Do f and g denote the same function on this model?
inline EquivReport equiv_on_model(const Formula& f, const Formula& g,
                                  const MarkovProcess& m) {
  Valuation vf = eval(f, m), vg = eval(g, m);
  for (int i = 0; i < m.state_count(); ++i)
    if (vf.values[i] != vg.values[i])
      return EquivReport{
          false, std::make_tuple(m.states()[i], vf.values[i], vg.values[i])};
  return EquivReport{true, std::nullopt};
}

/// Unit norm on the model: max over states of |value| (the infimum over r
/// with |f| <= r*1, computed exactly on a finite state space).
inline Rational norm_on_model(const Formula& f, const MarkovProcess& m) {
  Valuation v = eval(f, m);
  Rational best = 0;
  for (const auto& q : v.values) best = rat_max(best, rat_abs(q));
  return best;
}

struct RefinementStep {
  std::vector<int> splitter_block;  // states of the splitter, pre-split ids
  std::string label;
  Partition after;
};

/// Partition sequence from the trivial partition to the stable one; each
/// step names the (block, label) splitter that forced it.
struct RefinementTrace {
  Partition initial;
  std::vector<RefinementStep> steps;
};

/// Coarsest partition such that, per label, all states of a block give equal
/// total mass to every block. Splits are driven by one (block, label)
/// splitter at a time so the trace supports certificate construction.
inline std::pair<Partition, RefinementTrace> bisim_partition(
    const MarkovProcess& m) {
  const int n = m.state_count();
  Partition cur = Partition::trivial(n);
  cur.normalize();
  RefinementTrace trace{cur, {}};

  for (;;) {
    bool split_done = false;
    for (size_t b = 0; b < cur.blocks.size() && !split_done; ++b) {
      std::vector<char> in_b(n, 0);
      for (int s : cur.blocks[b]) in_b[s] = 1;
      for (size_t li = 0; li < m.labels().size() && !split_done; ++li) {
        std::vector<Rational> sig(n);
        for (int s = 0; s < n; ++s)
          sig[s] = m.mass_into(static_cast<int>(li), s, in_b);
        // Does any block see two different masses into the splitter?
        bool splits = false;
        for (const auto& blk : cur.blocks)
          for (size_t k = 1; k < blk.size() && !splits; ++k)
            if (sig[blk[k]] != sig[blk[0]]) splits = true;
        if (!splits) continue;
        Partition next;
        for (const auto& blk : cur.blocks) {
          std::map<Rational, std::vector<int>> groups;
          for (int s : blk) groups[sig[s]].push_back(s);
          for (auto& [value, members] : groups)
            next.blocks.push_back(std::move(members));
        }
        next.normalize();
        trace.steps.push_back(
            RefinementStep{cur.blocks[b], m.labels()[li], next});
        cur = std::move(next);
        split_done = true;
      }
    }
    if (!split_done) break;
  }
  return {cur, trace};
}

struct EquivalentStatesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Exact indicator formulas for the blocks of each partition along the
/// refinement trace. Level 0 is the constant 1. When a step splits a parent
/// P by the diamond values v_1 < ... < v_m into blocks, the child taking
/// value v_j gets  chi_P ^ (0 v (left-slope ^ right-slope))  where the
/// slopes are affine in the splitter test formula; the hat is exactly 1 on
/// value v_j and exactly 0 on the other v_i.
inline Formula hat_at(const Formula& test, const std::vector<Rational>& values,
                      size_t j) {
  Formula left = Formula::one(), right = Formula::one();
  if (j > 0) {
    Rational c = 1 / (values[j] - values[j - 1]);
    left = Formula::scale(
        c, Formula::add(test, Formula::constant(-values[j - 1])));
  }
  if (j + 1 < values.size()) {
    Rational c = 1 / (values[j + 1] - values[j]);
    right = Formula::scale(
        c, Formula::add(Formula::constant(values[j + 1]), Formula::neg(test)));
  }
  return Formula::join(Formula::zero(), Formula::meet(left, right));
}

inline size_t find_block(const Partition& p, int state) {
  for (size_t i = 0; i < p.blocks.size(); ++i)
    for (int s : p.blocks[i])
      if (s == state) return i;
  throw std::logic_error("state not covered by partition");
}

inline size_t find_block_exact(const Partition& p,
                               const std::vector<int>& states) {
  for (size_t i = 0; i < p.blocks.size(); ++i)
    if (p.blocks[i] == states) return i;
  throw std::logic_error("splitter block not present in partition");
}

/// Node count of the formula after replacing pre-order node `target` with
/// `repl`; used by the certificate minimizer.
inline Formula replace_node(const Formula& f, size_t target, const Formula& repl,
                            size_t& counter) {
  if (counter++ == target) return repl;
  switch (f.kind()) {
    case FKind::Zero:
    case FKind::One:
    case FKind::Var:
      return f;
    case FKind::Scale:
      return Formula::scale(f.coeff(), replace_node(f.child(), target, repl, counter));
    case FKind::Dia:
      return Formula::dia(f.label(), replace_node(f.child(), target, repl, counter));
    case FKind::Add: {
      Formula l = replace_node(f.lhs(), target, repl, counter);
      return Formula::add(std::move(l), replace_node(f.rhs(), target, repl, counter));
    }
    case FKind::Join: {
      Formula l = replace_node(f.lhs(), target, repl, counter);
      return Formula::join(std::move(l), replace_node(f.rhs(), target, repl, counter));
    }
    default: {
      Formula l = replace_node(f.lhs(), target, repl, counter);
      return Formula::meet(std::move(l), replace_node(f.rhs(), target, repl, counter));
    }
  }
}

inline std::vector<Formula> node_candidates(const Formula& f, size_t target,
                                            size_t& counter) {
  if (counter++ == target) {
    std::vector<Formula> cands{Formula::zero(), Formula::one()};
    switch (f.kind()) {
      case FKind::Scale:
      case FKind::Dia:
        cands.push_back(f.child());
        break;
      case FKind::Add:
      case FKind::Join:
      case FKind::Meet:
        cands.push_back(f.lhs());
        cands.push_back(f.rhs());
        break;
      default:
        break;
    }
    return cands;
  }
  switch (f.kind()) {
    case FKind::Zero:
    case FKind::One:
    case FKind::Var:
      return {};
    case FKind::Scale:
    case FKind::Dia:
      return node_candidates(f.child(), target, counter);
    default: {
      auto l = node_candidates(f.lhs(), target, counter);
      if (!l.empty()) return l;
      return node_candidates(f.rhs(), target, counter);
    }
  }
}

/// Greedy shrink: repeatedly replace any subterm by 0, 1, or one of its
/// children while the separation survives.
template <typename Separates>
inline Formula minimize_certificate(Formula f, Separates separates) {
  bool improved = true;
  while (improved) {
    improved = false;
    size_t total = f.size();
    for (size_t idx = 0; idx < total && !improved; ++idx) {
      size_t c0 = 0;
      for (const Formula& cand : node_candidates(f, idx, c0)) {
        size_t c1 = 0;
        Formula trial = replace_node(f, idx, cand, c1);
        if (trial.size() < f.size() && separates(trial)) {
          f = trial;
          improved = true;
          break;
        }
      }
    }
  }
  return f;
}

}  // namespace detail

/// A formula taking provably different values at two non-bisimilar states;
/// verified by exact evaluation before it is returned, then greedily
/// simplified. Throws EquivalentStatesError when no certificate can exist.
inline Formula distinguishing_formula(const MarkovProcess& m,
                                      const std::string& x,
                                      const std::string& y) {
  int xs = m.state_index_checked(x), ys = m.state_index_checked(y);
  if (xs == ys) throw EquivalentStatesError("states are identical");
  auto [final_partition, trace] = bisim_partition(m);
  if (detail::find_block(final_partition, xs) ==
      detail::find_block(final_partition, ys))
    throw EquivalentStatesError("states '" + x + "' and '" + y +
                                "' are behaviourally equivalent");

  Partition cur = trace.initial;
  std::vector<Formula> indicators{Formula::one()};
  for (const auto& step : trace.steps) {
    const Formula& chi_b =
        indicators[detail::find_block_exact(cur, step.splitter_block)];
    Formula test = Formula::dia(step.label, chi_b);
    Valuation tv = eval(test, m);

    if (detail::find_block(cur, xs) == detail::find_block(cur, ys) &&
        detail::find_block(step.after, xs) !=
            detail::find_block(step.after, ys)) {
      // This is the split that separates the pair; the splitter test is the
      // certificate (states of one parent block group by its value).
      Formula cert = test;
      if (tv.values[xs] == tv.values[ys])
        throw std::logic_error("refinement split without a value difference");
      auto separates = [&](const Formula& c) {
        Valuation v = eval(c, m);
        return v.values[xs] != v.values[ys];
      };
      return detail::minimize_certificate(cert, separates);
    }

    // Rebuild indicators for the refined partition.
    std::vector<int> parent_of(m.state_count());
    for (size_t b = 0; b < cur.blocks.size(); ++b)
      for (int s : cur.blocks[b]) parent_of[s] = static_cast<int>(b);
    std::vector<Formula> next;
    for (const auto& child : step.after.blocks) {
      int parent = parent_of[child.front()];
      if (cur.blocks[parent].size() == child.size()) {
        next.push_back(indicators[parent]);  // block survived unsplit
        continue;
      }
      // Distinct splitter values across the parent, sorted.
      std::set<Rational> values_set;
      for (int s : cur.blocks[parent]) values_set.insert(tv.values[s]);
      std::vector<Rational> values(values_set.begin(), values_set.end());
      size_t j = 0;
      while (values[j] != tv.values[child.front()]) ++j;
      next.push_back(Formula::meet(indicators[parent],
                                   detail::hat_at(test, values, j)));
    }
    cur = step.after;
    indicators = std::move(next);
  }
  throw std::logic_error("separated states never split along the trace");
}

struct SearchOutcome {
  enum class Kind { Inconclusive, Finite, Symbolic };
  Kind kind = Kind::Inconclusive;
  std::optional<MarkovProcess> model;  // Finite
  std::string state;                   // Finite
  Rational point;                      // Symbolic: x0 in [0,1]
  Rational value1, value2;
  int models_tried = 0;
};

/// Probes for a model separating f and g: the two stock processes first,
/// then the symbolic unit-interval process, then seeded random models.
/// Inconclusive after `budget` probes. Deterministic for a fixed seed.
inline SearchOutcome search_counterexample(const Formula& f, const Formula& g,
                                           int budget, int max_states,
                                           uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  std::set<std::string> labels_set;
  f.collect_labels(labels_set);
  g.collect_labels(labels_set);
  if (labels_set.empty()) labels_set.insert(kDefaultLabel);
  std::vector<std::string> labels(labels_set.begin(), labels_set.end());
  bool tau_only =
      labels.size() == 1 && labels[0] == kDefaultLabel;

  Rng rng(seed);
  SearchOutcome out;
  auto stock = seed_models();
  for (int probe = 0; probe < budget; ++probe) {
    ++out.models_tried;
    if (probe == static_cast<int>(stock.size()) && tau_only) {
      // The parametric unit-interval process, compared symbolically.
      auto witness = pp_diff_witness(eval_symbolic(f), eval_symbolic(g));
      if (witness) {
        out.kind = SearchOutcome::Kind::Symbolic;
        out.point = *witness;
        out.value1 = eval_pointwise(f, *witness);
        out.value2 = eval_pointwise(g, *witness);
        return out;
      }
      continue;
    }
    MarkovProcess m =
        probe < static_cast<int>(stock.size())
            ? stock[probe]
            : random_model(rng, max_states, labels);
    EquivReport r = equiv_on_model(f, g, m);
    if (!r.equal) {
      out.kind = SearchOutcome::Kind::Finite;
      out.model = std::move(m);
      out.state = std::get<0>(*r.witness);
      out.value1 = std::get<1>(*r.witness);
      out.value2 = std::get<2>(*r.witness);
      return out;
    }
  }
  return out;
}

/// Coefficient rounding with a syntactic error budget:
///   scale r f : pick s with |r - s| * unit_bound(f) <= eps/2 and recurse
///               on f with eps / (2 max(1,|s|));
///   f + g     : eps/2 each side;
///   join/meet : eps both sides (nonexpansive);
///   <> f      : eps unchanged.
/// The result differs from the input by at most eps in sup norm on every
/// model. Replacement coefficients are the smallest-denominator rationals
/// within their tolerance windows.
inline Formula rational_approx(const Formula& f, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  switch (f.kind()) {
    case FKind::Zero:
    case FKind::One:
      return f;
    case FKind::Var:
      throw std::invalid_argument("rational_approx: formula has free variables");
    case FKind::Add:
      return Formula::add(rational_approx(f.lhs(), eps / 2),
                          rational_approx(f.rhs(), eps / 2));
    case FKind::Join:
      return Formula::join(rational_approx(f.lhs(), eps),
                           rational_approx(f.rhs(), eps));
    case FKind::Meet:
      return Formula::meet(rational_approx(f.lhs(), eps),
                           rational_approx(f.rhs(), eps));
    case FKind::Dia:
      return Formula::dia(f.label(), rational_approx(f.child(), eps));
    case FKind::Scale: {
      const Rational& r = f.coeff();
      Rational b = unit_bound(f.child());
      Rational tol = b > 0 ? Rational(eps / (2 * b)) : Rational(eps / 2);
      Rational s = simplest_in_interval(r - tol, r + tol);
      Rational child_eps = eps / (2 * rat_max(Rational(1), rat_abs(s)));
      return Formula::scale(s, rational_approx(f.child(), child_eps));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace riesz

#endif  // RIESZ_EQUIVALENCE_HPP_
