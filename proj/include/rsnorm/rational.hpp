#ifndef RSNORM_RATIONAL_HPP
#define RSNORM_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace rsnorm {

/// Arbitrary-precision rational, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& r) { return sgn(r); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) fail(ErrorCode::Syntax, "bad rational literal '" + text + "'");
  r.canonicalize();
  if (r.get_den() == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Decimal rendering with a fixed number of digits after the point (round toward zero).
inline std::string to_decimal(const Rational& r, int digits = 10) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(r) * scale;
  Integer whole = scaled.get_num() / scaled.get_den();
  std::string s = whole.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (sign(r) < 0 && s != "0") s.insert(0, "-");
  return s;
}

/// Closed rational interval [lo, hi], used for exact enclosures.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& v) { return {v, v}; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return sign(lo) <= 0 && sign(hi) >= 0; }
  /// +1 / -1 when the interval lies strictly on one side of zero, 0 otherwise.
  int strict_sign() const {
    if (sign(lo) > 0) return 1;
    if (sign(hi) < 0) return -1;
    return 0;
  }
  Rational magnitude() const { return std::max(abs(lo), abs(hi)); }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline Interval operator*(const Rational& c, const Interval& a) {
  if (sign(c) >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

/// Interval quotient; the divisor must not contain zero.
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorCode::DivisionByZero, "interval division by an interval containing zero");
  Interval inv{1 / b.hi, 1 / b.lo};
  return a * inv;
}

/// Distance from an interval to a point (0 when the point lies inside).
inline Rational distance(const Interval& a, const Rational& v) {
  if (v < a.lo) return a.lo - v;
  if (v > a.hi) return v - a.hi;
  return 0;
}

} // namespace rsnorm

#endif // RSNORM_RATIONAL_HPP
