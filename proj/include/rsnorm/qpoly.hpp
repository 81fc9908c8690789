#ifndef RSNORM_QPOLY_HPP
#define RSNORM_QPOLY_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "upoly.hpp"

namespace rsnorm::qpoly {

inline const QField kQ{};

inline QPoly from_coeffs(std::vector<Rational> c) {
  QPoly p(std::move(c));
  upoly::trim(kQ, p);
  return p;
}

/// Root x - r.
inline QPoly linear(const Rational& r) { return from_coeffs({-r, 1}); }

inline Rational eval(const QPoly& p, const Rational& x) { return upoly::eval(kQ, p, x); }

inline Interval eval(const QPoly& p, const Interval& x) {
  Interval acc = Interval::point(0);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + Interval::point(*it);
  return acc;
}

/// Positive rational multiple with coprime integer coefficients and positive leading coefficient.
inline QPoly primitive(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& v : p.c) {
    if (sign(v) == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (sign(p.lc()) < 0) factor = -factor;
  return upoly::scale(kQ, p, factor);
}

/// Same as primitive() but keeps the sign of the input (scaling by a positive rational).
inline QPoly positive_primitive(const QPoly& p) {
  if (p.is_zero()) return p;
  QPoly q = primitive(p);
  if (sign(p.lc()) < 0) q = upoly::neg(kQ, q);
  return q;
}

inline QPoly gcd(const QPoly& a, const QPoly& b) { return upoly::gcd(kQ, primitive(a), primitive(b)); }

inline QPoly squarefree_part(const QPoly& a) { return upoly::squarefree_part(kQ, primitive(a)); }

/// Yun's squarefree decomposition: a = lc * prod f_i^i with the f_i monic, squarefree, pairwise coprime.
inline std::vector<std::pair<QPoly, int>> squarefree_factorization(const QPoly& a) {
  if (a.is_zero()) fail(ErrorCode::DegenerateInput, "squarefree factorization of zero");
  std::vector<std::pair<QPoly, int>> out;
  QPoly f = upoly::monic(kQ, a);
  if (f.degree() == 0) return out;
  QPoly df = upoly::derivative(kQ, f);
  QPoly b = upoly::gcd(kQ, f, df);
  QPoly c = upoly::exact_div(kQ, f, b);
  QPoly d = upoly::sub(kQ, upoly::exact_div(kQ, df, b), upoly::derivative(kQ, c));
  for (int i = 1; c.degree() > 0; ++i) {
    QPoly g = d.is_zero() ? c : upoly::gcd(kQ, c, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    c = upoly::exact_div(kQ, c, g);
    d = upoly::sub(kQ, upoly::exact_div(kQ, d, g), upoly::derivative(kQ, c));
  }
  return out;
}

/// Monic, squarefree, pairwise coprime refinement of the nonconstant inputs.
/// Every input's squarefree part is a product of the returned elements.
inline std::vector<QPoly> coprime_basis(const std::vector<QPoly>& inputs) {
  std::vector<QPoly> basis;
  for (const auto& in : inputs) {
    if (in.is_zero() || in.degree() <= 0) continue;
    basis.push_back(squarefree_part(in));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        QPoly g = upoly::gcd(kQ, basis[i], basis[j]);
        if (g.degree() <= 0) continue;
        QPoly a = upoly::exact_div(kQ, basis[i], g);
        QPoly b = upoly::exact_div(kQ, basis[j], g);
        std::vector<QPoly> next;
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (k != i && k != j) next.push_back(basis[k]);
        for (auto* p : {&g, &a, &b})
          if (p->degree() > 0) next.push_back(upoly::monic(kQ, *p));
        basis = std::move(next);
        changed = true;
      }
    }
  }
  return basis;
}

/// Total order used for deterministic output: degree, then coefficients from the top.
inline bool canonical_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto& u = a.c[static_cast<std::size_t>(i)];
    const auto& v = b.c[static_cast<std::size_t>(i)];
    if (u != v) return u < v;
  }
  return false;
}

/// Cauchy bound: every complex root has modulus < bound.
inline Rational root_bound(const QPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.c[static_cast<std::size_t>(i)] / p.lc())));
  return m + 1;
}

inline std::string to_string(const QPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& v = p.c[static_cast<std::size_t>(i)];
    if (sign(v) == 0) continue;
    Rational mag = abs(v);
    if (out.empty()) out += sign(v) < 0 ? "-" : "";
    else out += sign(v) < 0 ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty()) out += rsnorm::to_string(mag);
    else if (mag == 1) out += mono;
    else out += rsnorm::to_string(mag) + "*" + mono;
  }
  return out;
}

} // namespace rsnorm::qpoly

#endif // RSNORM_QPOLY_HPP
