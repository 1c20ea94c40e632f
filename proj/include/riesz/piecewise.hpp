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
#ifndef RIESZ_PIECEWISE_HPP_
#define RIESZ_PIECEWISE_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "riesz/formula.hpp"
#include "riesz/poly.hpp"
#include "riesz/rational.hpp"

namespace riesz {

/// Continuous piecewise-polynomial function on [0,1]. Breakpoints are exact
/// real algebraic numbers strictly inside (0,1), strictly increasing;
/// pieces[k] covers the k-th cell of the induced subdivision.
struct PiecewisePoly {
  std::vector<AlgebraicNumber> breaks;
  std::vector<Poly> pieces;

  static PiecewisePoly constant(const Rational& q) {
    return PiecewisePoly{{}, {Poly::constant(q)}};
  }
  static PiecewisePoly identity() { return PiecewisePoly{{}, {Poly::x()}}; }

  int cell_count() const { return static_cast<int>(pieces.size()); }

  AlgebraicNumber cell_lo(int k) const {
    return k == 0 ? AlgebraicNumber::from_rational(0) : breaks[k - 1];
  }
  AlgebraicNumber cell_hi(int k) const {
    return k == cell_count() - 1 ? AlgebraicNumber::from_rational(1) : breaks[k];
  }

  /// Drop breakpoints whose two sides carry the same polynomial.
  void coalesce() {
    std::vector<AlgebraicNumber> nb;
    std::vector<Poly> np;
    np.push_back(pieces[0]);
    for (size_t k = 0; k < breaks.size(); ++k) {
      if (pieces[k + 1] == np.back()) continue;
      nb.push_back(breaks[k]);
      np.push_back(pieces[k + 1]);
    }
    breaks = std::move(nb);
    pieces = std::move(np);
  }

  /// Structural invariants: piece/break counts, breaks strictly increasing
  /// inside (0,1), and exact continuity across every breakpoint.
  void validate() const {
    if (pieces.size() != breaks.size() + 1)
      throw std::logic_error("piecewise: piece/breakpoint count mismatch");
    for (size_t k = 0; k < breaks.size(); ++k) {
      if (breaks[k].compare_rational(0) <= 0 ||
          breaks[k].compare_rational(1) >= 0)
        throw std::logic_error("piecewise: breakpoint outside (0,1)");
      if (k + 1 < breaks.size() && compare(breaks[k], breaks[k + 1]) >= 0)
        throw std::logic_error("piecewise: breakpoints not strictly increasing");
      Poly d = pieces[k] - pieces[k + 1];
      if (sign_at(d, breaks[k]) != 0)
        throw std::logic_error("piecewise: discontinuous at a breakpoint");
    }
  }
};

namespace detail {

struct Refined {
  std::vector<AlgebraicNumber> breaks;
  std::vector<std::pair<int, int>> cells;  // (piece of f, piece of g)
};

inline Refined common_refine(const PiecewisePoly& f, const PiecewisePoly& g) {
  Refined r;
  size_t i = 0, j = 0;
  for (;;) {
    r.cells.emplace_back(static_cast<int>(i), static_cast<int>(j));
    bool fh = i < f.breaks.size(), gh = j < g.breaks.size();
    if (!fh && !gh) break;
    int c = fh && gh ? compare(f.breaks[i], g.breaks[j]) : (fh ? -1 : 1);
    if (c < 0) {
      r.breaks.push_back(f.breaks[i++]);
    } else if (c > 0) {
      r.breaks.push_back(g.breaks[j++]);
    } else {
      r.breaks.push_back(f.breaks[i++]);
      ++j;
    }
  }
  return r;
}

/// Roots of d strictly inside the cell (lo, hi), sorted.
inline std::vector<AlgebraicNumber> roots_in_cell(const Poly& d,
                                                  const AlgebraicNumber& lo,
                                                  const AlgebraicNumber& hi) {
  std::vector<AlgebraicNumber> out;
  for (auto& r : isolate_roots(d, 0, 1))
    if (compare(r, lo) > 0 && compare(r, hi) < 0) out.push_back(std::move(r));
  return out;
}

}  // namespace detail

inline PiecewisePoly pp_scale(const Rational& q, const PiecewisePoly& f) {
  PiecewisePoly out{f.breaks, {}};
  for (const auto& p : f.pieces) out.pieces.push_back(p.scaled(q));
  out.coalesce();
  return out;
}

inline PiecewisePoly pp_add(const PiecewisePoly& f, const PiecewisePoly& g) {
  auto r = detail::common_refine(f, g);
  PiecewisePoly out{std::move(r.breaks), {}};
  for (auto [fi, gi] : r.cells) out.pieces.push_back(f.pieces[fi] + g.pieces[gi]);
  out.coalesce();
  return out;
}

namespace detail {

inline PiecewisePoly pp_lattice(const PiecewisePoly& f, const PiecewisePoly& g,
                                bool take_max) {
  auto r = common_refine(f, g);
  PiecewisePoly out;
  auto emit = [&](const Poly& p) {
    if (!out.pieces.empty() && out.pieces.back() == p) return false;
    out.pieces.push_back(p);
    return true;
  };
  for (size_t k = 0; k < r.cells.size(); ++k) {
    auto [fi, gi] = r.cells[k];
    AlgebraicNumber lo = k == 0 ? AlgebraicNumber::from_rational(0)
                                : r.breaks[k - 1];
    AlgebraicNumber hi = k == r.cells.size() - 1
                             ? AlgebraicNumber::from_rational(1)
                             : r.breaks[k];
    const Poly& fp = f.pieces[fi];
    const Poly& gp = g.pieces[gi];
    Poly d = fp - gp;
    if (d.is_zero()) {
      if (!out.pieces.empty()) {
        if (emit(fp)) out.breaks.push_back(lo);
      } else {
        emit(fp);
      }
      continue;
    }
    // Split the cell at the sign changes of fp - gp; each open subcell has
    // a constant sign, read off at an interior rational sample.
    std::vector<AlgebraicNumber> cuts = roots_in_cell(d, lo, hi);
    std::vector<AlgebraicNumber> bounds;
    bounds.push_back(lo);
    for (auto& c : cuts) bounds.push_back(std::move(c));
    bounds.push_back(hi);
    for (size_t s = 0; s + 1 < bounds.size(); ++s) {
      Rational sample = sample_between(bounds[s], bounds[s + 1]);
      int sign = rat_sign(d.eval(sample));
      const Poly& chosen = (take_max ? sign >= 0 : sign <= 0) ? fp : gp;
      if (out.pieces.empty()) {
        emit(chosen);
      } else if (emit(chosen)) {
        out.breaks.push_back(bounds[s]);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Pointwise maximum; breakpoints are refined with the exact roots of the
/// difference polynomial on each cell.
inline PiecewisePoly pp_join(const PiecewisePoly& f, const PiecewisePoly& g) {
  return detail::pp_lattice(f, g, true);
}

/// Pointwise minimum, dual to pp_join.
inline PiecewisePoly pp_meet(const PiecewisePoly& f, const PiecewisePoly& g) {
  return detail::pp_lattice(f, g, false);
}

/// Exact function equality: over the common refinement every pair of cell
/// polynomials must coincide (a nonzero polynomial cannot vanish on a cell).
inline bool pp_equal(const PiecewisePoly& f, const PiecewisePoly& g) {
  auto r = detail::common_refine(f, g);
  for (auto [fi, gi] : r.cells)
    if (f.pieces[fi] != g.pieces[gi]) return false;
  return true;
}

/// Exact evaluation at a rational point of [0,1]; the piece is located by
/// exact sign tests against the algebraic breakpoints.
inline Rational pp_eval(const PiecewisePoly& f, const Rational& x) {
  if (x < 0 || x > 1)
    throw std::invalid_argument("pp_eval: point outside [0,1]");
  size_t k = 0;
  while (k < f.breaks.size() && f.breaks[k].compare_rational(x) < 0) ++k;
  return f.pieces[k].eval(x);
}

/// A rational point where f and g take different values, if any.
inline std::optional<Rational> pp_diff_witness(const PiecewisePoly& f,
                                               const PiecewisePoly& g) {
  auto r = detail::common_refine(f, g);
  for (size_t k = 0; k < r.cells.size(); ++k) {
    auto [fi, gi] = r.cells[k];
    Poly d = f.pieces[fi] - g.pieces[gi];
    if (d.is_zero()) continue;
    AlgebraicNumber lo = k == 0 ? AlgebraicNumber::from_rational(0)
                                : r.breaks[k - 1];
    AlgebraicNumber hi = k == r.cells.size() - 1
                             ? AlgebraicNumber::from_rational(1)
                             : r.breaks[k];
    std::vector<AlgebraicNumber> bounds;
    bounds.push_back(lo);
    for (auto& c : detail::roots_in_cell(d, lo, hi))
      bounds.push_back(std::move(c));
    bounds.push_back(hi);
    Rational sample = sample_between(bounds[0], bounds[1]);
    if (d.eval(sample) != 0) return sample;
  }
  return std::nullopt;
}

/// Does |f| <= bound hold on all of [0,1]? Checked exactly at cell endpoints
/// and at the interior critical points of each piece.
inline bool pp_bounded_by(const PiecewisePoly& f, const Rational& bound) {
  auto within = [&](const Poly& p, const AlgebraicNumber& z) {
    Poly upper = Poly::constant(bound) - p;   // >= 0 wanted
    Poly lower = p + Poly::constant(bound);   // >= 0 wanted
    return sign_at(upper, z) >= 0 && sign_at(lower, z) >= 0;
  };
  for (int k = 0; k < f.cell_count(); ++k) {
    const Poly& p = f.pieces[k];
    AlgebraicNumber lo = f.cell_lo(k), hi = f.cell_hi(k);
    if (!within(p, lo) || !within(p, hi)) return false;
    Poly dp = p.derivative();
    if (dp.is_zero()) continue;
    for (const auto& crit : detail::roots_in_cell(dp, lo, hi))
      if (!within(p, crit)) return false;
  }
  return true;
}

/// Symbolic semantics on the unit-interval process where the diamond acts
/// as multiplication by the identity function. Only the default modality
/// is meaningful here.
inline PiecewisePoly eval_symbolic(const Formula& f) {
  switch (f.kind()) {
    case FKind::Zero:
      return PiecewisePoly::constant(0);
    case FKind::One:
      return PiecewisePoly::constant(1);
    case FKind::Var:
      throw std::invalid_argument("eval_symbolic: free variable '" +
                                  f.var_name() + "'");
    case FKind::Scale:
      return pp_scale(f.coeff(), eval_symbolic(f.child()));
    case FKind::Add:
      return pp_add(eval_symbolic(f.lhs()), eval_symbolic(f.rhs()));
    case FKind::Join:
      return pp_join(eval_symbolic(f.lhs()), eval_symbolic(f.rhs()));
    case FKind::Meet:
      return pp_meet(eval_symbolic(f.lhs()), eval_symbolic(f.rhs()));
    case FKind::Dia: {
      if (f.label() != kDefaultLabel)
        throw std::invalid_argument(
            "eval_symbolic: only the default modality is supported, found <" +
            f.label() + ">");
      PiecewisePoly c = eval_symbolic(f.child());
      PiecewisePoly out{std::move(c.breaks), {}};
      for (const auto& p : c.pieces) out.pieces.push_back(p * Poly::x());
      out.coalesce();
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

/// Independent oracle for eval_symbolic: direct recursion at a fixed point,
/// with the diamond clause <>f at x = x * f(x). Never touches polynomials.
inline Rational eval_pointwise(const Formula& f, const Rational& x) {
  if (x < 0 || x > 1)
    throw std::invalid_argument("eval_pointwise: point outside [0,1]");
  switch (f.kind()) {
    case FKind::Zero:
      return 0;
    case FKind::One:
      return 1;
    case FKind::Var:
      throw std::invalid_argument("eval_pointwise: free variable '" +
                                  f.var_name() + "'");
    case FKind::Scale:
      return f.coeff() * eval_pointwise(f.child(), x);
    case FKind::Add:
      return eval_pointwise(f.lhs(), x) + eval_pointwise(f.rhs(), x);
    case FKind::Join:
      return rat_max(eval_pointwise(f.lhs(), x), eval_pointwise(f.rhs(), x));
    case FKind::Meet:
      return rat_min(eval_pointwise(f.lhs(), x), eval_pointwise(f.rhs(), x));
    case FKind::Dia:
      if (f.label() != kDefaultLabel)
        throw std::invalid_argument(
            "eval_pointwise: only the default modality is supported, found <" +
            f.label() + ">");
      return x * eval_pointwise(f.child(), x);
  }
  throw std::logic_error("unreachable");
}

/// Text dump: one "on [lo,hi]: poly" line per piece; non-rational endpoints
/// print as 6-digit truncated decimals, with exact certificates (defining
/// polynomial in integer form plus isolating interval) listed afterwards.
inline std::string pp_dump(const PiecewisePoly& f) {
  auto endpoint_str = [](const AlgebraicNumber& z) {
    if (z.is_rational()) return rat_str(z.value());
    AlgebraicNumber w = z;
    w.refine_below(Rational(1, 10000000));
    return decimal_approx(w.approx(), 6);
  };
  std::string out;
  for (int k = 0; k < f.cell_count(); ++k) {
    out += "on [" + endpoint_str(f.cell_lo(k)) + "," +
           endpoint_str(f.cell_hi(k)) + "]: " + poly_str(f.pieces[k]) + "\n";
  }
  bool any = false;
  for (size_t k = 0; k < f.breaks.size(); ++k) {
    if (f.breaks[k].is_rational()) continue;
    if (!any) {
      out += "breakpoints:\n";
      any = true;
    }
    AlgebraicNumber b = f.breaks[k];
    b.refine_below(Rational(1, 256));
    out += "  " + endpoint_str(b) + " = root of " +
           poly_str(integer_normal_form(b.defining())) + " in (" +
           rat_str(b.lo()) + ", " + rat_str(b.hi()) + ")\n";
  }
  return out;
}

}  // namespace riesz

#endif  // RIESZ_PIECEWISE_HPP_
