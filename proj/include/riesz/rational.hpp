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
#ifndef RIESZ_RATIONAL_HPP_
#define RIESZ_RATIONAL_HPP_

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace riesz {

/// Exact rational scalar. Always canonical: lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int rat_sign(const Rational& q) { return sgn(q); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline const Rational& rat_max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

inline const Rational& rat_min(const Rational& a, const Rational& b) {
  return a < b ? a : b;
}

/// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rational& q) { return q.get_str(); }

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/// Parses "p", "-p", "p/q" or a decimal such as "0.25" / "-3.5".
/// Decimals convert exactly (0.25 -> 1/4). Returns nothing on malformed input.
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string s = text;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  auto slash = s.find('/');
  auto dot = s.find('.');
  Rational result;
  if (slash != std::string::npos) {
    if (dot != std::string::npos) return std::nullopt;
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
    Integer d(den, 10);
    if (d == 0) return std::nullopt;
    result = Rational(Integer(num, 10), d);
    result.canonicalize();
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (!detail::all_digits(ip) || !detail::all_digits(fp)) return std::nullopt;
    Integer scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    result = Rational(Integer(ip, 10) * scale + Integer(fp, 10), scale);
    result.canonicalize();
  } else {
    if (!detail::all_digits(s)) return std::nullopt;
    result = Rational(Integer(s, 10));
  }
  if (neg) result = -result;
  return result;
}

inline Integer rat_floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer rat_ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace detail {

// Stern-Brocot descent. Requires 0 < a <= b.
inline Rational simplest_positive(const Rational& a, const Rational& b) {
  Integer fa = rat_floor(a);
  if (Rational(fa) == a) return a;          // a itself is the simplest
  if (Rational(fa + 1) <= b) return Rational(fa + 1);
  // fa < a <= b < fa+1: recurse on the fractional parts, inverted.
  Rational af = a - Rational(fa), bf = b - Rational(fa);
  Rational inner = simplest_positive(1 / bf, 1 / af);
  return Rational(fa) + 1 / inner;
}

}  // namespace detail

/// Smallest-denominator rational in the closed interval [lo, hi].
inline Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("simplest_in_interval: empty interval");
  if (lo <= 0 && 0 <= hi) return Rational(0);
  if (hi < 0) return -detail::simplest_positive(-hi, -lo);
  return detail::simplest_positive(lo, hi);
}

/// Truncated decimal rendering with `digits` places; exact integers print bare.
/// Used only for human-facing approximations, never for computation.
inline std::string decimal_approx(const Rational& q, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Integer n;
  mpz_tdiv_q(n.get_mpz_t(), Integer(q.get_num() * scale).get_mpz_t(),
             q.get_den_mpz_t());
  bool neg = n < 0;
  if (neg) n = -n;
  Integer ip = n / scale, fp = n % scale;
  if (fp == 0) return (neg ? "-" : "") + ip.get_str();
  std::string frac = fp.get_str();
  while (frac.size() < static_cast<size_t>(digits)) frac = "0" + frac;
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

}  // namespace riesz

#endif  // RIESZ_RATIONAL_HPP_
