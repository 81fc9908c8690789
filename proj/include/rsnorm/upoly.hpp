#ifndef RSNORM_UPOLY_HPP
#define RSNORM_UPOLY_HPP

#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace rsnorm {

/// A coefficient field: a policy object that owns whatever context the
/// elements need (a tower of minimal polynomials, for instance).
template <class K>
concept CoefficientField = requires(const K& k, const typename K::Elem& a, long n) {
  { k.zero() } -> std::convertible_to<typename K::Elem>;
  { k.one() } -> std::convertible_to<typename K::Elem>;
  { k.from_int(n) } -> std::convertible_to<typename K::Elem>;
  { k.add(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.sub(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.mul(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.neg(a) } -> std::convertible_to<typename K::Elem>;
  { k.inv(a) } -> std::convertible_to<typename K::Elem>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
};

/// Dense univariate polynomial, lowest degree first. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
template <class E>
struct UPoly {
  std::vector<E> c;

  UPoly() = default;
  explicit UPoly(std::vector<E> coeffs) : c(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const E& lc() const { return c.back(); }
  const E& operator[](std::size_t i) const { return c[i]; }
  friend bool operator==(const UPoly&, const UPoly&) = default;
};

/// The rationals as a coefficient field.
struct QField {
  using Elem = Rational;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long n) const { return n; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (sign(a) == 0) fail(ErrorCode::DivisionByZero, "inverse of zero rational");
    return 1 / a;
  }
  bool is_zero(const Elem& a) const { return sign(a) == 0; }
};

using QPoly = UPoly<Rational>;

namespace upoly {

template <CoefficientField K>
void trim(const K& k, UPoly<typename K::Elem>& p) {
  while (!p.c.empty() && k.is_zero(p.c.back())) p.c.pop_back();
}

template <CoefficientField K>
UPoly<typename K::Elem> constant(const K& k, const typename K::Elem& v) {
  UPoly<typename K::Elem> p({v});
  trim(k, p);
  return p;
}

/// The monomial v * X^n.
template <CoefficientField K>
UPoly<typename K::Elem> monomial(const K& k, const typename K::Elem& v, int n) {
  UPoly<typename K::Elem> p;
  if (k.is_zero(v)) return p;
  p.c.assign(static_cast<std::size_t>(n) + 1, k.zero());
  p.c.back() = v;
  return p;
}

template <CoefficientField K>
UPoly<typename K::Elem> add(const K& k, const UPoly<typename K::Elem>& a, const UPoly<typename K::Elem>& b) {
  UPoly<typename K::Elem> r;
  std::size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.c.size() && i < b.c.size()) r.c.push_back(k.add(a.c[i], b.c[i]));
    else if (i < a.c.size()) r.c.push_back(a.c[i]);
    else r.c.push_back(b.c[i]);
  }
  trim(k, r);
  return r;
}

template <CoefficientField K>
UPoly<typename K::Elem> neg(const K& k, const UPoly<typename K::Elem>& a) {
  UPoly<typename K::Elem> r;
  r.c.reserve(a.c.size());
  for (const auto& v : a.c) r.c.push_back(k.neg(v));
  return r;
}

template <CoefficientField K>
UPoly<typename K::Elem> sub(const K& k, const UPoly<typename K::Elem>& a, const UPoly<typename K::Elem>& b) {
  return add(k, a, neg(k, b));
}

template <CoefficientField K>
UPoly<typename K::Elem> scale(const K& k, const UPoly<typename K::Elem>& a, const typename K::Elem& s) {
  UPoly<typename K::Elem> r;
  if (k.is_zero(s)) return r;
  r.c.reserve(a.c.size());
  for (const auto& v : a.c) r.c.push_back(k.mul(v, s));
  trim(k, r);
  return r;
}

template <CoefficientField K>
UPoly<typename K::Elem> mul(const K& k, const UPoly<typename K::Elem>& a, const UPoly<typename K::Elem>& b) {
  UPoly<typename K::Elem> r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (k.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = k.add(r.c[i + j], k.mul(a.c[i], b.c[j]));
  }
  trim(k, r);
  return r;
}

template <CoefficientField K>
UPoly<typename K::Elem> pow(const K& k, const UPoly<typename K::Elem>& a, unsigned n) {
  UPoly<typename K::Elem> r = constant(k, k.one()), base = a;
  while (n > 0) {
    if (n & 1U) r = mul(k, r, base);
    n >>= 1U;
    if (n > 0) base = mul(k, base, base);
  }
  return r;
}

template <CoefficientField K>
UPoly<typename K::Elem> derivative(const K& k, const UPoly<typename K::Elem>& a) {
  UPoly<typename K::Elem> r;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(k.mul(k.from_int(static_cast<long>(i)), a.c[i]));
  trim(k, r);
  return r;
}

template <CoefficientField K>
typename K::Elem eval(const K& k, const UPoly<typename K::Elem>& a, const typename K::Elem& x) {
  typename K::Elem acc = k.zero();
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = k.add(k.mul(acc, x), *it);
  return acc;
}

/// Euclidean division a = q*b + r with deg r < deg b. Inverts lc(b) once.
template <CoefficientField K>
std::pair<UPoly<typename K::Elem>, UPoly<typename K::Elem>> divmod(const K& k, const UPoly<typename K::Elem>& a,
                                                                   const UPoly<typename K::Elem>& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  UPoly<typename K::Elem> q, r = a;
  if (a.degree() < b.degree()) return {q, r};
  const auto inv_lc = k.inv(b.lc());
  q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, k.zero());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const auto factor = k.mul(r.lc(), inv_lc);
    q.c[static_cast<std::size_t>(shift)] = factor;
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      auto& slot = r.c[i + static_cast<std::size_t>(shift)];
      slot = k.sub(slot, k.mul(factor, b.c[i]));
    }
    // the top coefficient cancels exactly
    r.c.pop_back();
    trim(k, r);
  }
  trim(k, q);
  return {q, r};
}

template <CoefficientField K>
UPoly<typename K::Elem> rem(const K& k, const UPoly<typename K::Elem>& a, const UPoly<typename K::Elem>& b) {
  return divmod(k, a, b).second;
}

/// Exact quotient; throws when b does not divide a.
template <CoefficientField K>
UPoly<typename K::Elem> exact_div(const K& k, const UPoly<typename K::Elem>& a, const UPoly<typename K::Elem>& b) {
  auto [q, r] = divmod(k, a, b);
  if (!r.is_zero()) fail(ErrorCode::Internal, "inexact polynomial division");
  return q;
}

template <CoefficientField K>
UPoly<typename K::Elem> monic(const K& k, const UPoly<typename K::Elem>& a) {
  if (a.is_zero()) return a;
  return scale(k, a, k.inv(a.lc()));
}

/// Monic gcd by the Euclidean algorithm. Over a tower, any inversion may raise a split.
template <CoefficientField K>
UPoly<typename K::Elem> gcd(const K& k, UPoly<typename K::Elem> a, UPoly<typename K::Elem> b) {
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::DegenerateInput, "gcd of two zero polynomials");
  while (!b.is_zero()) {
    auto r = rem(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, a);
}

template <class E>
struct ExtGcd {
  UPoly<E> g, s, t; // s*a + t*b = g, g monic
};

template <CoefficientField K>
ExtGcd<typename K::Elem> ext_gcd(const K& k, const UPoly<typename K::Elem>& a, const UPoly<typename K::Elem>& b) {
  using P = UPoly<typename K::Elem>;
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::DegenerateInput, "gcd of two zero polynomials");
  P r0 = a, r1 = b, s0 = constant(k, k.one()), s1, t0, t1 = constant(k, k.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(k, r0, r1);
    P s2 = sub(k, s0, mul(k, q, s1));
    P t2 = sub(k, t0, mul(k, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  auto inv_lc = k.inv(r0.lc());
  return {scale(k, r0, inv_lc), scale(k, s0, inv_lc), scale(k, t0, inv_lc)};
}

/// a / gcd(a, a'), made monic: same distinct roots, each simple.
template <CoefficientField K>
UPoly<typename K::Elem> squarefree_part(const K& k, const UPoly<typename K::Elem>& a) {
  if (a.is_zero()) fail(ErrorCode::DegenerateInput, "squarefree part of the zero polynomial");
  if (a.degree() == 0) return constant(k, k.one());
  auto g = gcd(k, a, derivative(k, a));
  return monic(k, exact_div(k, a, g));
}

/// Number of distinct roots in an algebraic closure.
template <CoefficientField K>
int count_distinct_complex_roots(const K& k, const UPoly<typename K::Elem>& a) {
  return squarefree_part(k, a).degree();
}

} // namespace upoly
} // namespace rsnorm

#endif // RSNORM_UPOLY_HPP
