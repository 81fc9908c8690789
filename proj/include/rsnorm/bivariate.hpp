#ifndef RSNORM_BIVARIATE_HPP
#define RSNORM_BIVARIATE_HPP

#include <utility>
#include <vector>

#include "mpoly.hpp"
#include "qpoly.hpp"

namespace rsnorm {

/// Polynomial in a main variable with coefficients in Q[other]; c[i] multiplies main^i.
struct BiPoly {
  std::vector<QPoly> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const QPoly& lc() const { return c.back(); }
  friend bool operator==(const BiPoly&, const BiPoly&) = default;
};

namespace bivariate {

inline void trim(BiPoly& p) {
  while (!p.c.empty() && p.c.back().is_zero()) p.c.pop_back();
}

/// p must only involve `main` and `coef`.
inline BiPoly from_mpoly(const MPoly& p, Var main = Y, Var coef = X) {
  BiPoly r;
  for (const auto& t : p.terms()) {
    for (int v = 0; v < kNumVars; ++v)
      if (v != main && v != coef && t.m[static_cast<std::size_t>(v)] != 0)
        fail(ErrorCode::Internal, "bivariate polynomial expected");
    const std::size_t i = t.m[main], j = t.m[coef];
    if (r.c.size() <= i) r.c.resize(i + 1);
    QPoly& q = r.c[i];
    if (q.c.size() <= j) q.c.resize(j + 1, Rational(0));
    q.c[j] = t.c;
  }
  for (auto& q : r.c) upoly::trim(qpoly::kQ, q);
  trim(r);
  return r;
}

inline MPoly to_mpoly(const BiPoly& p, Var main = Y, Var coef = X) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < p.c.size(); ++i)
    for (std::size_t j = 0; j < p.c[i].c.size(); ++j) {
      if (sign(p.c[i].c[j]) == 0) continue;
      Monomial m{};
      m[main] = static_cast<std::uint16_t>(i);
      m[coef] = static_cast<std::uint16_t>(j);
      out.push_back({m, p.c[i].c[j]});
    }
  return MPoly::from_terms(std::move(out));
}

/// Monic gcd of the coefficients (zero for the zero polynomial).
inline QPoly content(const BiPoly& p) {
  QPoly g;
  for (const auto& q : p.c) {
    if (q.is_zero()) continue;
    g = g.is_zero() ? upoly::monic(qpoly::kQ, q) : qpoly::gcd(g, q);
    if (g.degree() == 0) break;
  }
  return g;
}

inline BiPoly primitive_part(const BiPoly& p) {
  if (p.is_zero()) return p;
  const QPoly c = content(p);
  BiPoly r;
  for (const auto& q : p.c) r.c.push_back(q.is_zero() ? q : upoly::exact_div(qpoly::kQ, q, c));
  return r;
}

inline BiPoly scale(const BiPoly& p, const QPoly& s) {
  BiPoly r;
  for (const auto& q : p.c) r.c.push_back(upoly::mul(qpoly::kQ, q, s));
  trim(r);
  return r;
}

/// lc(b)^(deg a - deg b + 1) * a = q*b + r.
inline BiPoly prem(BiPoly a, const BiPoly& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "pseudo-remainder by zero");
  const int db = b.degree();
  int steps = a.degree() - db + 1;
  if (steps <= 0) return a;
  const QPoly& lb = b.lc();
  while (!a.is_zero() && a.degree() >= db) {
    const QPoly la = a.lc();
    const std::size_t shift = static_cast<std::size_t>(a.degree() - db);
    for (auto& q : a.c) q = upoly::mul(qpoly::kQ, q, lb);
    for (std::size_t i = 0; i < b.c.size(); ++i)
      a.c[i + shift] = upoly::sub(qpoly::kQ, a.c[i + shift], upoly::mul(qpoly::kQ, la, b.c[i]));
    a.c.pop_back();
    trim(a);
    --steps;
  }
  if (steps > 0) a = scale(a, upoly::pow(qpoly::kQ, lb, static_cast<unsigned>(steps)));
  return a;
}

/// Resultant with respect to the main variable, as the determinant of the Sylvester
/// matrix by fraction-free (Bareiss) elimination over Q[other].
inline QPoly resultant(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return qpoly::from_coeffs({1});
  if (n == 0) return upoly::pow(qpoly::kQ, b.c[0], static_cast<unsigned>(m));
  if (m == 0) return upoly::pow(qpoly::kQ, a.c[0], static_cast<unsigned>(n));
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<QPoly>> mat(size, std::vector<QPoly>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a.c[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      mat[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b.c[static_cast<std::size_t>(n - k)];

  int sgn = 1;
  QPoly prev = qpoly::from_coeffs({1});
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < size && mat[piv][k].is_zero()) ++piv;
      if (piv == size) return {};
      std::swap(mat[k], mat[piv]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        QPoly v = upoly::sub(qpoly::kQ, upoly::mul(qpoly::kQ, mat[i][j], mat[k][k]),
                             upoly::mul(qpoly::kQ, mat[i][k], mat[k][j]));
        mat[i][j] = upoly::exact_div(qpoly::kQ, v, prev);
      }
      mat[i][k] = {};
    }
    prev = mat[k][k];
  }
  QPoly det = mat[size - 1][size - 1];
  return sgn > 0 ? det : upoly::neg(qpoly::kQ, det);
}

/// Greatest common divisor in Q[other][main] by the primitive remainder sequence.
inline BiPoly gcd(const BiPoly& a0, const BiPoly& b0) {
  if (a0.is_zero() && b0.is_zero()) fail(ErrorCode::DegenerateInput, "gcd of two zero polynomials");
  if (a0.is_zero()) return b0;
  if (b0.is_zero()) return a0;
  const QPoly c = qpoly::gcd(content(a0), content(b0));
  BiPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (true) {
    if (b.degree() == 0) {
      a = BiPoly{{qpoly::from_coeffs({1})}};
      break;
    }
    BiPoly r = prem(a, b);
    if (r.is_zero()) {
      a = b;
      break;
    }
    a = std::move(b);
    b = primitive_part(r);
  }
  return scale(a, c);
}

} // namespace bivariate

/// Bivariate gcd of polynomials in x and y, scaled to coprime integer coefficients.
inline MPoly gcd_xy(const MPoly& a, const MPoly& b) {
  return mpoly::primitive(bivariate::to_mpoly(bivariate::gcd(bivariate::from_mpoly(a), bivariate::from_mpoly(b))));
}

/// Resultant in y of polynomials in x and y.
inline QPoly resultant_y(const MPoly& a, const MPoly& b) {
  return bivariate::resultant(bivariate::from_mpoly(a), bivariate::from_mpoly(b));
}

} // namespace rsnorm

#endif // RSNORM_BIVARIATE_HPP
