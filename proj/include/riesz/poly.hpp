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
#ifndef RIESZ_POLY_HPP_
#define RIESZ_POLY_HPP_

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "riesz/rational.hpp"

namespace riesz {

/// Univariate polynomial over the rationals, dense, lowest degree first,
/// no trailing zero coefficients (the zero polynomial is the empty list).
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const Rational& q) { return Poly({q}); }
  static Poly x() { return Poly({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](size_t i) const { return c_[i]; }
  const Rational& leading() const { return c_.back(); }

  Rational eval(const Rational& t) const {
    Rational acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<Rational> r = c_;
    for (auto& q : r) q = -q;
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }
  Poly scaled(const Rational& q) const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= q;
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
  }

  /// Euclidean division; the divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> rem = c_;
    std::vector<Rational> quo;
    int dd = d.degree();
    if (degree() >= dd) quo.assign(degree() - dd + 1, Rational(0));
    while (static_cast<int>(rem.size()) - 1 >= dd) {
      if (rem.back() == 0) {
        rem.pop_back();
        continue;
      }
      int k = static_cast<int>(rem.size()) - 1 - dd;
      Rational f = rem.back() / d.leading();
      quo[k] = f;
      for (int i = 0; i <= dd; ++i) rem[k + i] -= f * d[i];
      rem.pop_back();  // leading term cancelled by construction
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return Poly();
    return scaled(1 / leading());
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
inline Poly poly_scale(const Rational& q, const Poly& p) { return p.scaled(q); }

/// Monic gcd via the Euclidean remainder sequence.
inline Poly poly_gcd(Poly a, Poly b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a;
}

/// p with repeated factors reduced to multiplicity one: p / gcd(p, p').
inline Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_part of zero");
  if (p.degree() == 0) return Poly::constant(1);
  Poly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p.monic();
  return p.divmod(g).first.monic();
}

/// Sturm chain p, p', then negated remainders until vanishing. Chain
/// entries may only be rescaled by positive factors, so normalization
/// divides by |leading| rather than making them monic.
inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  if (p.degree() >= 1) {
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
      Poly r = chain[chain.size() - 2].divmod(chain.back()).second;
      if (r.is_zero()) break;
      Poly next = -r;
      chain.push_back(next.scaled(1 / rat_abs(next.leading())));
      if (chain.back().degree() == 0) break;
    }
  }
  return chain;
}

inline int sign_variations_at(const std::vector<Poly>& chain, const Rational& t) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = rat_sign(p.eval(t));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

/// Distinct real roots of squarefree `p` in the open interval (a, b).
/// Requires p(a) != 0 and p(b) != 0.
inline int sturm_count_open(const std::vector<Poly>& chain, const Rational& a,
                            const Rational& b) {
  if (b <= a) return 0;
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

/// Exactly one real root of `defining` lies in [lo, hi]. Two shapes occur:
/// a strict sign change with root-free endpoints, or (for exactly known
/// rationals) lo itself is the root and hi is strictly signed. `defining`
/// is squarefree with rational coefficients.
class AlgebraicNumber {
 public:
  static AlgebraicNumber from_rational(const Rational& q) {
    AlgebraicNumber a;
    a.defining_ = Poly({-q, Rational(1)});  // x - q
    a.lo_ = q;
    a.hi_ = q + 1;
    a.rational_ = true;
    return a;
  }

  /// Interval form: requires a strict sign change over [lo, hi].
  static AlgebraicNumber from_interval(Poly defining, const Rational& lo,
                                       const Rational& hi) {
    AlgebraicNumber a;
    if (defining.degree() == 1) {
      // Degree one pins the root exactly; canonicalize.
      Rational q = -defining[0] / defining[1];
      return from_rational(q);
    }
    int slo = rat_sign(defining.eval(lo)), shi = rat_sign(defining.eval(hi));
    if (slo == 0 || shi == 0 || slo == shi)
      throw std::invalid_argument("isolating interval lacks a strict sign change");
    a.defining_ = std::move(defining);
    a.lo_ = lo;
    a.hi_ = hi;
    a.rational_ = false;
    return a;
  }

  bool is_rational() const { return rational_; }
  const Rational& value() const {
    if (!rational_) throw std::logic_error("value() on a non-rational point");
    return lo_;
  }
  const Poly& defining() const { return defining_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  /// Halve the enclosure (no-op for exact rationals). May discover the root
  /// to be the rational midpoint and collapse to the exact form.
  void refine() {
    if (rational_) return;
    Rational m = (lo_ + hi_) / 2;
    int sm = rat_sign(defining_.eval(m));
    if (sm == 0) {
      *this = from_rational(m);
      return;
    }
    if (sm == rat_sign(defining_.eval(lo_)))
      lo_ = m;
    else
      hi_ = m;
  }

  /// Shrink the enclosure below `width` (rationals are already exact).
  void refine_below(const Rational& width) {
    while (!rational_ && hi_ - lo_ >= width) refine();
  }

  /// Rational approximation within the current enclosure.
  Rational approx() const { return rational_ ? lo_ : (lo_ + hi_) / 2; }

  /// Sign of this number minus q.
  int compare_rational(const Rational& q) const {
    if (rational_) return lo_ < q ? -1 : (lo_ == q ? 0 : 1);
    if (q <= lo_) return 1;   // root lies strictly inside (lo, hi)
    if (q >= hi_) return -1;
    int s = rat_sign(defining_.eval(q));
    if (s == 0) return 0;
    return s == rat_sign(defining_.eval(lo_)) ? 1 : -1;
  }

  friend int compare(AlgebraicNumber a, AlgebraicNumber b) {
    if (a.rational_) return -b.compare_rational(a.lo_);
    if (b.rational_) return a.compare_rational(b.lo_);
    // Equality first: a common defining factor with a root in the overlap
    // pins both numbers to the same real.
    Poly g = poly_gcd(a.defining_, b.defining_);
    if (g.degree() >= 1) {
      Rational lo = rat_max(a.lo_, b.lo_), hi = rat_min(a.hi_, b.hi_);
      if (lo <= hi && poly_has_root_in(g, lo, hi)) return 0;
    }
    for (;;) {
      if (a.rational_) return -b.compare_rational(a.lo_);
      if (b.rational_) return a.compare_rational(b.lo_);
      if (a.hi_ <= b.lo_) return -1;
      if (b.hi_ <= a.lo_) return 1;
      a.refine();
      b.refine();
    }
  }

  /// Squarefree `p` (nonzero): does p have a root in the closed [lo, hi]?
  static bool poly_has_root_in(const Poly& p, const Rational& lo,
                               const Rational& hi) {
    if (p.eval(lo) == 0 || p.eval(hi) == 0) return true;
    if (hi <= lo) return false;
    return sturm_count_open(sturm_chain(p), lo, hi) > 0;
  }

 private:
  AlgebraicNumber() = default;
  Poly defining_;
  Rational lo_, hi_;
  bool rational_ = false;
};

inline bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return compare(a, b) < 0;
}
inline bool alg_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return compare(a, b) == 0;
}

/// Sign of polynomial s at the algebraic point z (exact).
inline int sign_at(const Poly& s, const AlgebraicNumber& z) {
  if (s.is_zero()) return 0;
  if (z.is_rational()) return rat_sign(s.eval(z.value()));
  if (s.degree() == 0) return rat_sign(s[0]);
  Poly ssf = squarefree_part(s);
  Poly g = poly_gcd(ssf, z.defining());
  if (g.degree() >= 1 &&
      AlgebraicNumber::poly_has_root_in(g, z.lo(), z.hi()))
    return 0;
  // s(z) != 0: shrink the enclosure until s is sign-constant across it.
  AlgebraicNumber w = z;
  auto chain = sturm_chain(ssf);
  for (;;) {
    if (w.is_rational()) return rat_sign(s.eval(w.value()));
    if (s.eval(w.lo()) != 0 && s.eval(w.hi()) != 0 &&
        sturm_count_open(chain, w.lo(), w.hi()) == 0)
      return rat_sign(s.eval(w.lo()));
    w.refine();
  }
}

/// A rational strictly between two algebraic numbers (requires lo < hi).
inline Rational sample_between(AlgebraicNumber lo, AlgebraicNumber hi) {
  for (;;) {
    Rational lb = lo.is_rational() ? lo.value() : lo.hi();
    Rational rb = hi.is_rational() ? hi.value() : hi.lo();
    if (lb < rb) return (lb + rb) / 2;
    if (!lo.is_rational()) lo.refine();
    if (!hi.is_rational()) hi.refine();
    if (lo.is_rational() && hi.is_rational() && lo.value() >= hi.value())
      throw std::invalid_argument("sample_between: endpoints out of order");
  }
}

namespace detail {

inline void isolate_rec(const Poly& p, const std::vector<Poly>& chain,
                        const Rational& lo, const Rational& hi, int count,
                        std::vector<AlgebraicNumber>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back(AlgebraicNumber::from_interval(p, lo, hi));
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (p.eval(mid) == 0) {
    // Exact rational root at the midpoint: deflate and recurse around it.
    Poly q = p.divmod(Poly({-mid, Rational(1)})).first;
    auto qchain = sturm_chain(q);
    isolate_rec(q, qchain, lo, mid, sturm_count_open(qchain, lo, mid), out);
    out.push_back(AlgebraicNumber::from_rational(mid));
    isolate_rec(q, qchain, mid, hi, sturm_count_open(qchain, mid, hi), out);
    return;
  }
  int left = sturm_count_open(chain, lo, mid);
  isolate_rec(p, chain, lo, mid, left, out);
  isolate_rec(p, chain, mid, hi, count - left, out);
}

}  // namespace detail

/// All distinct real roots of p (nonzero) in the closed interval [lo, hi],
/// sorted increasing, multiplicity discarded. Each root carries a squarefree
/// defining polynomial and an isolating interval disjoint from the others.
inline std::vector<AlgebraicNumber> isolate_roots(const Poly& p,
                                                  const Rational& lo,
                                                  const Rational& hi) {
  if (p.is_zero())
    throw std::invalid_argument("isolate_roots: zero polynomial");
  if (hi < lo) throw std::invalid_argument("isolate_roots: empty interval");
  Poly sf = squarefree_part(p);
  std::vector<AlgebraicNumber> out;
  if (sf.degree() < 1) return out;

  bool lo_root = sf.eval(lo) == 0, hi_root = lo != hi && sf.eval(hi) == 0;
  if (lo_root) {
    out.push_back(AlgebraicNumber::from_rational(lo));
    sf = sf.divmod(Poly({-lo, Rational(1)})).first;
  }
  if (hi_root) sf = sf.divmod(Poly({-hi, Rational(1)})).first;
  if (sf.degree() >= 1 && lo < hi) {
    auto chain = sturm_chain(sf);
    detail::isolate_rec(sf, chain, lo, hi, sturm_count_open(chain, lo, hi), out);
  }
  if (hi_root) out.push_back(AlgebraicNumber::from_rational(hi));

  // Interior recursion emits left-to-right; endpoint roots slot in at the
  // ends, so the list is already sorted.
  return out;
}

/// Lowest-first human form: "1/2 + x - 2*x^2". Coefficients 1 and -1 drop
/// from nonconstant terms.
inline std::string poly_str(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const Rational& c = p[k];
    if (c == 0) continue;
    Rational a = rat_abs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += rat_str(a);
    } else {
      if (a != 1) out += rat_str(a) + "*";
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out;
}

/// Same polynomial with integer coefficients (denominators cleared, content
/// reduced, positive leading coefficient); used for root certificates.
inline Poly integer_normal_form(const Poly& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& c : p.coeffs())
    den_lcm = lcm(den_lcm, Integer(c.get_den()));
  std::vector<Rational> scaled;
  Integer content = 0;
  for (const auto& c : p.coeffs()) {
    Rational v = c * Rational(den_lcm);
    scaled.push_back(v);
    content = gcd(content, Integer(v.get_num()));
  }
  if (content == 0) content = 1;
  if (scaled.back() < 0) content = -content;
  for (auto& v : scaled) v /= Rational(content);
  return Poly(std::move(scaled));
}

}  // namespace riesz

#endif  // RIESZ_POLY_HPP_
