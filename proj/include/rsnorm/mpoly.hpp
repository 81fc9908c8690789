#ifndef RSNORM_MPOLY_HPP
#define RSNORM_MPOLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace rsnorm {

/// The fixed variable universe; s is reserved for saturation.
enum Var : int { S = 0, T = 1, X = 2, Y = 3 };
inline constexpr int kNumVars = 4;

/// Exponent vector indexed by Var.
using Monomial = std::array<std::uint16_t, kNumVars>;

inline const char* var_name(Var v) {
  static const char* names[] = {"s", "t", "x", "y"};
  return names[v];
}

namespace mono {

inline int degree(const Monomial& m) { return m[0] + m[1] + m[2] + m[3]; }

inline Monomial unit(Var v, unsigned e = 1) {
  Monomial m{};
  m[v] = static_cast<std::uint16_t>(e);
  return m;
}

inline Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kNumVars; ++i) {
    const unsigned e = unsigned(a[i]) + b[i];
    if (e > 0xFFFFU) fail(ErrorCode::DegenerateInput, "exponent overflow");
    r[i] = static_cast<std::uint16_t>(e);
  }
  return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kNumVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// b / a, assuming a | b.
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int i = 0; i < kNumVars; ++i) r[i] = static_cast<std::uint16_t>(b[i] - a[i]);
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kNumVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kNumVars; ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

inline std::uint64_t lex_key(const Monomial& m) {
  return (std::uint64_t(m[0]) << 48) | (std::uint64_t(m[1]) << 32) | (std::uint64_t(m[2]) << 16) | m[3];
}

} // namespace mono

/// lex with s > t > x > y, or graded reverse lex with the same variable ranking.
enum class MonomialOrder { Lex, GRevLex };

/// Order key: comparing keys as integers compares monomials.
inline std::uint64_t order_key(MonomialOrder o, const Monomial& m) {
  if (o == MonomialOrder::Lex) return mono::lex_key(m);
  // total degree, then the smaller y-exponent wins, then x, then t
  const std::uint64_t d = static_cast<std::uint64_t>(mono::degree(m));
  return (d << 48) | (std::uint64_t(0xFFFFU - m[3]) << 32) | (std::uint64_t(0xFFFFU - m[2]) << 16) |
         std::uint64_t(0xFFFFU - m[1]);
}

struct Term {
  Monomial m;
  Rational c;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over Q in s, t, x, y. Terms are kept in descending lex order
/// without zero coefficients, so equal polynomials have equal representations.
class MPoly {
 public:
  MPoly() = default;
  MPoly(long c) : MPoly(Rational(c)) {} // NOLINT: integer literals read naturally in formulas
  MPoly(const Rational& c) {            // NOLINT
    if (sign(c) != 0) terms_.push_back({Monomial{}, c});
  }

  static MPoly var(Var v, unsigned e = 1) { return monomial(mono::unit(v, e), 1); }
  static MPoly monomial(const Monomial& m, const Rational& c) {
    MPoly p;
    if (sign(c) != 0) p.terms_.push_back({m, c});
    return p;
  }
  /// From arbitrary terms (any order, duplicates allowed).
  static MPoly from_terms(std::vector<Term> terms) {
    MPoly p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && mono::degree(terms_[0].m) == 0); }
  Rational constant_term() const {
    if (!terms_.empty() && mono::degree(terms_.back().m) == 0) return terms_.back().c;
    return 0;
  }

  int degree(Var v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.m[v]);
    return d;
  }
  int total_degree() const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, mono::degree(t.m));
    return d;
  }
  bool uses(Var v) const { return degree(v) > 0; }

  friend bool operator==(const MPoly&, const MPoly&) = default;

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, 1); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, -1); }
  friend MPoly operator-(const MPoly& a) {
    MPoly r = a;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& u : a.terms_)
      for (const auto& v : b.terms_) out.push_back({mono::mul(u.m, v.m), u.c * v.c});
    return from_terms(std::move(out));
  }
  MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
  MPoly& operator-=(const MPoly& b) { return *this = *this - b; }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

  MPoly scaled(const Rational& c) const {
    if (sign(c) == 0) return {};
    MPoly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }

  MPoly pow(unsigned n) const {
    MPoly r(1), base = *this;
    while (n > 0) {
      if (n & 1U) r *= base;
      n >>= 1U;
      if (n > 0) base *= base;
    }
    return r;
  }

 private:
  static MPoly merge(const MPoly& a, const MPoly& b, int sb) {
    MPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && mono::lex_key(a.terms_[i].m) > mono::lex_key(b.terms_[j].m))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || mono::lex_key(b.terms_[j].m) > mono::lex_key(a.terms_[i].m)) {
        r.terms_.push_back({b.terms_[j].m, sb > 0 ? b.terms_[j].c : Rational(-b.terms_[j].c)});
        ++j;
      } else {
        Rational c = sb > 0 ? Rational(a.terms_[i].c + b.terms_[j].c) : Rational(a.terms_[i].c - b.terms_[j].c);
        if (sign(c) != 0) r.terms_.push_back({a.terms_[i].m, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& u, const Term& v) { return mono::lex_key(u.m) > mono::lex_key(v.m); });
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m) out.back().c += t.c;
      else out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return sign(t.c) == 0; });
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

namespace mpoly {

inline MPoly x() { return MPoly::var(X); }
inline MPoly y() { return MPoly::var(Y); }
inline MPoly t() { return MPoly::var(T); }
inline MPoly s() { return MPoly::var(S); }

/// Coefficients of p as a polynomial in v: result[i] multiplies v^i (and is free of v).
inline std::vector<MPoly> coefficients_in(const MPoly& p, Var v) {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.m;
    const auto e = m[v];
    m[v] = 0;
    buckets[e].push_back({m, t.c});
  }
  std::vector<MPoly> out;
  for (auto& b : buckets) out.push_back(MPoly::from_terms(std::move(b)));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

/// Leading coefficient in v (a polynomial free of v).
inline MPoly lead_in(const MPoly& p, Var v) {
  auto c = coefficients_in(p, v);
  return c.empty() ? MPoly{} : c.back();
}

/// Substitutes v := value.
inline MPoly substitute(const MPoly& p, Var v, const MPoly& value) {
  auto coeffs = coefficients_in(p, v);
  MPoly acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * value + coeffs[i];
  return acc;
}

/// Renames variables: variable i becomes perm[i].
inline MPoly permute(const MPoly& p, const std::array<Var, kNumVars>& perm) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Monomial m{};
    for (int i = 0; i < kNumVars; ++i) m[perm[static_cast<std::size_t>(i)]] = t.m[static_cast<std::size_t>(i)];
    out.push_back({m, t.c});
  }
  return MPoly::from_terms(std::move(out));
}

inline MPoly swap_vars(const MPoly& p, Var a, Var b) {
  std::array<Var, kNumVars> perm{S, T, X, Y};
  perm[a] = b;
  perm[b] = a;
  return permute(p, perm);
}

/// Partial derivative.
inline MPoly derivative(const MPoly& p, Var v) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.m[v] == 0) continue;
    Monomial m = t.m;
    m[v] = static_cast<std::uint16_t>(m[v] - 1);
    out.push_back({m, t.c * t.m[v]});
  }
  return MPoly::from_terms(std::move(out));
}

/// Exact value at a rational point (values indexed by Var).
inline Rational eval(const MPoly& p, const std::array<Rational, kNumVars>& at) {
  Rational acc = 0;
  for (const auto& t : p.terms()) {
    Rational term = t.c;
    for (int i = 0; i < kNumVars; ++i)
      for (unsigned e = 0; e < t.m[static_cast<std::size_t>(i)]; ++e) term *= at[static_cast<std::size_t>(i)];
    acc += term;
  }
  return acc;
}

/// Interval enclosure of the value over a box.
inline Interval eval(const MPoly& p, const std::array<Interval, kNumVars>& at) {
  Interval acc = Interval::point(0);
  for (const auto& t : p.terms()) {
    Interval term = Interval::point(t.c);
    for (int i = 0; i < kNumVars; ++i)
      for (unsigned e = 0; e < t.m[static_cast<std::size_t>(i)]; ++e) term = term * at[static_cast<std::size_t>(i)];
    acc = acc + term;
  }
  return acc;
}

/// A polynomial in v alone, as a dense univariate polynomial.
inline QPoly to_upoly(const MPoly& p, Var v) {
  QPoly r;
  for (const auto& t : p.terms()) {
    for (int i = 0; i < kNumVars; ++i)
      if (i != v && t.m[static_cast<std::size_t>(i)] != 0)
        fail(ErrorCode::Internal, "polynomial is not univariate in " + std::string(var_name(v)));
    if (r.c.size() <= t.m[v]) r.c.resize(t.m[v] + 1U, Rational(0));
    r.c[t.m[v]] = t.c;
  }
  return r;
}

inline MPoly from_upoly(const QPoly& p, Var v) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < p.c.size(); ++i)
    if (sign(p.c[i]) != 0) out.push_back({mono::unit(v, static_cast<unsigned>(i)), p.c[i]});
  return MPoly::from_terms(std::move(out));
}

/// Positive rational multiple with coprime integer coefficients and positive leading (lex) coefficient.
inline MPoly primitive(const MPoly& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.get_den_mpz_t());
  }
  Rational f(den_lcm, num_gcd);
  f.canonicalize();
  if (sign(p.terms().front().c) < 0) f = -f;
  return p.scaled(f);
}

/// Canonical text: terms by descending total degree, ties in lex order s > t > x > y;
/// coefficient 1 omitted, '*' between factors, '^' for powers.
inline std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<Term> terms = p.terms();
  std::stable_sort(terms.begin(), terms.end(), [](const Term& u, const Term& v) {
    const int du = mono::degree(u.m), dv = mono::degree(v.m);
    if (du != dv) return du > dv;
    return mono::lex_key(u.m) > mono::lex_key(v.m);
  });
  std::string out;
  for (const auto& t : terms) {
    const Rational mag = abs(t.c);
    if (out.empty()) out += sign(t.c) < 0 ? "-" : "";
    else out += sign(t.c) < 0 ? " - " : " + ";
    std::string body;
    for (int i = 0; i < kNumVars; ++i) {
      const unsigned e = t.m[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (!body.empty()) body += "*";
      body += var_name(static_cast<Var>(i));
      if (e > 1) body += "^" + std::to_string(e);
    }
    if (body.empty()) out += rsnorm::to_string(mag);
    else if (mag == 1) out += body;
    else out += rsnorm::to_string(mag) + "*" + body;
  }
  return out;
}

} // namespace mpoly
} // namespace rsnorm

#endif // RSNORM_MPOLY_HPP
