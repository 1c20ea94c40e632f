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
#ifndef RIESZ_SEMANTICS_HPP_
#define RIESZ_SEMANTICS_HPP_

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "riesz/formula.hpp"
#include "riesz/markov.hpp"
#include "riesz/rational.hpp"

namespace riesz {

/// Exact value of a formula at every state of a fixed finite process,
/// indexed in declared state order.
struct Valuation {
  std::vector<Rational> values;

  const Rational& operator[](int i) const { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }

  bool operator==(const Valuation& o) const { return values == o.values; }
  bool operator!=(const Valuation& o) const { return !(*this == o); }

  /// Pointwise comparison: true iff this <= other at every state.
  bool leq(const Valuation& o) const {
    for (int i = 0; i < size(); ++i)
      if (values[i] > o.values[i]) return false;
    return true;
  }
};

/// The expectation operator of the model: (dia_apply f)(x) is the weighted
/// sum of f over the label's distribution at x. Linear, positive and
/// 1-decreasing by construction.
inline Valuation dia_apply(const MarkovProcess& m, const std::string& label,
                           const Valuation& v) {
  Valuation out;
  out.values.resize(m.state_count());
  for (int x = 0; x < m.state_count(); ++x) {
    Rational sum = 0;
    for (const auto& [target, p] : m.distribution(label, x))
      sum += v.values[target] * p;
    out.values[x] = sum;
  }
  return out;
}

namespace detail {

inline const Valuation& eval_memo(
    const Formula& f, const MarkovProcess& m,
    std::unordered_map<const void*, Valuation>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;

  Valuation v;
  const int n = m.state_count();
  switch (f.kind()) {
    case FKind::Zero:
      v.values.assign(n, Rational(0));
      break;
    case FKind::One:
      v.values.assign(n, Rational(1));
      break;
    case FKind::Var:
      throw std::invalid_argument("eval: formula has free variable '" +
                                  f.var_name() + "'");
    case FKind::Scale: {
      const Valuation& c = eval_memo(f.child(), m, memo);
      v.values.reserve(n);
      for (int i = 0; i < n; ++i) v.values.push_back(f.coeff() * c.values[i]);
      break;
    }
    case FKind::Add: {
      const Valuation& a = eval_memo(f.lhs(), m, memo);
      const Valuation& b = eval_memo(f.rhs(), m, memo);
      v.values.reserve(n);
      for (int i = 0; i < n; ++i) v.values.push_back(a.values[i] + b.values[i]);
      break;
    }
    case FKind::Join:
    case FKind::Meet: {
      const Valuation& a = eval_memo(f.lhs(), m, memo);
      const Valuation& b = eval_memo(f.rhs(), m, memo);
      bool take_max = f.kind() == FKind::Join;
      v.values.reserve(n);
      for (int i = 0; i < n; ++i)
        v.values.push_back(take_max ? rat_max(a.values[i], b.values[i])
                                    : rat_min(a.values[i], b.values[i]));
      break;
    }
    case FKind::Dia:
      v = dia_apply(m, f.label(), eval_memo(f.child(), m, memo));
      break;
  }
  return memo.emplace(f.id(), std::move(v)).first->second;
}

}  // namespace detail

/// Compositional exact semantics on a finite process. Shared subtrees are
/// evaluated once per call.
inline Valuation eval(const Formula& f, const MarkovProcess& m) {
  std::unordered_map<const void*, Valuation> memo;
  return detail::eval_memo(f, m, memo);
}

inline Rational eval_at(const Formula& f, const MarkovProcess& m,
                        const std::string& state) {
  int i = m.state_index_checked(state);
  return eval(f, m).values[i];
}

}  // namespace riesz

#endif  // RIESZ_SEMANTICS_HPP_
