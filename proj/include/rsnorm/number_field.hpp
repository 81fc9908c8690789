#ifndef RSNORM_NUMBER_FIELD_HPP
#define RSNORM_NUMBER_FIELD_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpoly.hpp"
#include "sturm.hpp"

namespace rsnorm {

/// Element of a tower Q[a]/(m1)[b]/(m2): c[i] is the coefficient of b^i, a polynomial in a.
/// Reduced elements have deg_b < deg m2 and every coefficient of degree < deg m1.
struct NfElement {
  std::vector<QPoly> c;
  bool is_zero() const { return c.empty(); }
  friend bool operator==(const NfElement&, const NfElement&) = default;
};

/// Raised when an inversion meets a zero divisor: the minimal polynomial at `level`
/// factors, and `factor` (monic, proper) is the discovered piece.
struct SplitEvent {
  int level = 0;                // 1 or 2
  QPoly factor1;                // level 1: factor in a
  std::vector<QPoly> factor2;   // level 2: coefficients in b, each a polynomial in a
};

/// One real point of the tower: an isolating interval for the level-1 root and,
/// for depth 2, one for the level-2 root (over that level-1 root).
struct RealEmbedding {
  int id = -1;
  IsolatingInterval a;
  std::optional<IsolatingInterval> b;
};

/// Tower of at most two simple algebraic extensions of Q. Level-1 minimal polynomial
/// m1(a) is monic squarefree over Q; level-2 m2(b) is monic squarefree over Q[a]/(m1).
/// Neither needs to be irreducible: zero divisors are discovered lazily (SplitEvent).
class NumberField {
 public:
  using Elem = NfElement;

  NumberField() = default;

  static NumberField rationals() { return NumberField(); }

  static NumberField level1(const QPoly& m1, std::string name = "a") {
    if (m1.degree() < 1) fail(ErrorCode::DegenerateInput, "level-1 minimal polynomial must be nonconstant");
    NumberField f;
    f.depth_ = 1;
    f.m1_ = upoly::monic(qpoly::kQ, m1);
    f.names_[0] = std::move(name);
    return f;
  }

  /// m2 given by its b-coefficients (polynomials in a); it is made monic, which may split level 1.
  static NumberField level2(const QPoly& m1, const std::vector<QPoly>& m2, std::string name1 = "a",
                            std::string name2 = "b") {
    NumberField base = level1(m1, std::move(name1));
    NfElement lc;
    if (m2.size() < 2) fail(ErrorCode::DegenerateInput, "level-2 minimal polynomial must be nonconstant");
    lc.c = {m2.back()};
    lc = base.reduce(lc);
    NfElement inv = base.inv(lc);
    NumberField f = base;
    f.depth_ = 2;
    f.names_[1] = std::move(name2);
    for (const auto& coef : m2) {
      NfElement e = base.mul(base.reduce(NfElement{{coef}}), inv);
      f.m2_.push_back(e.is_zero() ? QPoly{} : e.c[0]);
    }
    if (f.m2_.back() != qpoly::from_coeffs({1})) fail(ErrorCode::DegenerateInput, "level-2 polynomial degenerates");
    return f;
  }

  int depth() const { return depth_; }
  const QPoly& m1() const { return m1_; }
  /// b-coefficients of the monic level-2 polynomial.
  const std::vector<QPoly>& m2() const { return m2_; }
  int degree1() const { return depth_ >= 1 ? m1_.degree() : 1; }
  int degree2() const { return depth_ >= 2 ? static_cast<int>(m2_.size()) - 1 : 1; }
  /// Number of complex points represented (product of level degrees).
  int conjugates() const { return degree1() * degree2(); }
  const std::string& name(int level) const { return names_[static_cast<std::size_t>(level - 1)]; }

  const std::vector<RealEmbedding>& real_embeddings() const { return real_; }
  void set_real_embeddings(std::vector<RealEmbedding> r) { real_ = std::move(r); }

  /// The level-1 subfield (depth <= 1), with embeddings projected.
  NumberField base() const {
    NumberField f = *this;
    if (depth_ == 2) {
      f.depth_ = 1;
      f.m2_.clear();
      for (auto& e : f.real_) e.b.reset();
    }
    return f;
  }

  // ---- field policy ----
  Elem zero() const { return {}; }
  Elem one() const { return from_rational(1); }
  Elem from_int(long n) const { return from_rational(Rational(n)); }
  Elem from_rational(const Rational& r) const {
    if (sign(r) == 0) return {};
    return {{qpoly::from_coeffs({r})}};
  }
  Elem gen(int level) const {
    if (level == 1) return reduce({{qpoly::from_coeffs({0, 1})}});
    return reduce({{QPoly{}, qpoly::from_coeffs({1})}});
  }
  bool is_zero(const Elem& e) const { return e.c.empty(); }

  Elem add(const Elem& x, const Elem& y) const {
    Elem r;
    std::size_t n = std::max(x.c.size(), y.c.size());
    r.c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < x.c.size() && i < y.c.size()) r.c[i] = upoly::add(qpoly::kQ, x.c[i], y.c[i]);
      else r.c[i] = i < x.c.size() ? x.c[i] : y.c[i];
    }
    trim(r);
    return r;
  }
  Elem neg(const Elem& x) const {
    Elem r = x;
    for (auto& p : r.c) p = upoly::neg(qpoly::kQ, p);
    return r;
  }
  Elem sub(const Elem& x, const Elem& y) const { return add(x, neg(y)); }

  Elem mul(const Elem& x, const Elem& y) const {
    if (x.is_zero() || y.is_zero()) return {};
    Elem r;
    r.c.assign(x.c.size() + y.c.size() - 1, QPoly{});
    for (std::size_t i = 0; i < x.c.size(); ++i) {
      if (x.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.c.size(); ++j) {
        if (y.c[j].is_zero()) continue;
        r.c[i + j] = upoly::add(qpoly::kQ, r.c[i + j], reduce1(upoly::mul(qpoly::kQ, x.c[i], y.c[j])));
      }
    }
    return reduce(std::move(r));
  }

  /// Inverse, or throws SplitEvent when x is a nonzero zero divisor.
  Elem inv(const Elem& x) const {
    if (x.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in number field");
    if (depth_ == 0) return from_rational(1 / x.c[0].c[0]);
    if (depth_ == 1 || x.c.size() == 1) return {{inv1(x.c[0])}};
    // level 2: extended Euclid over the base field in b
    NumberField k = base();
    UPoly<Elem> xb = lift_b(x), mb = lift_b_m2();
    auto eg = upoly::ext_gcd(k, xb, mb);
    if (eg.g.degree() > 0) {
      SplitEvent ev;
      ev.level = 2;
      for (const auto& coef : eg.g.c) ev.factor2.push_back(coef.is_zero() ? QPoly{} : coef.c[0]);
      throw ev;
    }
    Elem r;
    for (const auto& coef : eg.s.c) r.c.push_back(coef.is_zero() ? QPoly{} : coef.c[0]);
    return reduce(std::move(r));
  }

  /// Full reduction modulo the tower's minimal polynomials.
  Elem reduce(Elem e) const {
    if (depth_ == 0) {
      e.c.resize(std::min<std::size_t>(e.c.size(), 1));
      trim(e);
      return e;
    }
    for (auto& p : e.c) p = reduce1(p);
    if (depth_ == 2) {
      const std::size_t d2 = m2_.size() - 1;
      while (e.c.size() > d2) {
        trim(e);
        if (e.c.size() <= d2) break;
        QPoly top = e.c.back();
        const std::size_t shift = e.c.size() - 1 - d2;
        for (std::size_t i = 0; i < d2; ++i)
          e.c[i + shift] = upoly::sub(qpoly::kQ, e.c[i + shift], reduce1(upoly::mul(qpoly::kQ, top, m2_[i])));
        e.c.pop_back();
      }
    } else {
      if (e.c.size() > 1) fail(ErrorCode::Internal, "level-2 element in a level-1 field");
    }
    trim(e);
    return e;
  }

  /// Rational value when the reduced element is a constant.
  std::optional<Rational> as_rational(const Elem& e) const {
    if (e.is_zero()) return Rational(0);
    if (e.c.size() == 1 && e.c[0].degree() == 0) return e.c[0].c[0];
    return std::nullopt;
  }

  /// Splits the minimal polynomials along a split event (no embedding bookkeeping).
  std::pair<NumberField, NumberField> split_minpolys(const SplitEvent& ev) const {
    NumberField f1 = *this, f2 = *this;
    f1.real_.clear();
    f2.real_.clear();
    if (ev.level == 1) {
      QPoly g = upoly::monic(qpoly::kQ, ev.factor1);
      QPoly h = upoly::exact_div(qpoly::kQ, m1_, g);
      f1.m1_ = g;
      f2.m1_ = upoly::monic(qpoly::kQ, h);
      if (depth_ == 2) {
        f1.m2_ = reduce_coeffs(f1, m2_);
        f2.m2_ = reduce_coeffs(f2, m2_);
      }
      return {f1, f2};
    }
    NumberField k = base();
    UPoly<Elem> g, m = lift_b_m2();
    for (const auto& coef : ev.factor2) g.c.push_back(k.reduce({{coef}}));
    upoly::trim(k, g);
    g = upoly::monic(k, g);
    UPoly<Elem> h = upoly::exact_div(k, m, g);
    auto unlift = [](const UPoly<Elem>& p) {
      std::vector<QPoly> out;
      for (const auto& coef : p.c) out.push_back(coef.is_zero() ? QPoly{} : coef.c[0]);
      return out;
    };
    f1.m2_ = unlift(g);
    f2.m2_ = unlift(h);
    return {f1, f2};
  }

  /// The level-2 polynomial as a polynomial in b over the base field.
  UPoly<Elem> lift_b_m2() const {
    UPoly<Elem> r;
    for (const auto& coef : m2_) r.c.push_back(coef.is_zero() ? Elem{} : Elem{{coef}});
    return r;
  }

  /// A depth-2 element viewed as a polynomial in b over the base field.
  UPoly<Elem> lift_b(const Elem& x) const {
    UPoly<Elem> r;
    for (const auto& coef : x.c) r.c.push_back(coef.is_zero() ? Elem{} : Elem{{coef}});
    return r;
  }

  std::string to_string(const Elem& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    for (std::size_t i = e.c.size(); i-- > 0;) {
      if (e.c[i].is_zero()) continue;
      std::string coef = qpoly::to_string(e.c[i], names_[0]);
      std::string term;
      if (i == 0) term = coef;
      else {
        std::string mono = i == 1 ? names_[1] : names_[1] + "^" + std::to_string(i);
        term = coef == "1" ? mono : "(" + coef + ")*" + mono;
      }
      out += out.empty() ? term : " + " + term;
    }
    return out;
  }

  /// Deterministic ordering of towers by their minimal polynomials.
  static bool canonical_less(const NumberField& x, const NumberField& y) {
    if (qpoly::canonical_less(x.m1_, y.m1_)) return true;
    if (qpoly::canonical_less(y.m1_, x.m1_)) return false;
    if (x.m2_.size() != y.m2_.size()) return x.m2_.size() < y.m2_.size();
    for (std::size_t i = x.m2_.size(); i-- > 0;) {
      if (qpoly::canonical_less(x.m2_[i], y.m2_[i])) return true;
      if (qpoly::canonical_less(y.m2_[i], x.m2_[i])) return false;
    }
    return false;
  }

 private:
  static void trim(Elem& e) {
    while (!e.c.empty() && e.c.back().is_zero()) e.c.pop_back();
  }

  QPoly reduce1(const QPoly& p) const {
    if (depth_ == 0 || p.degree() < m1_.degree()) return p;
    return upoly::rem(qpoly::kQ, p, m1_);
  }

  QPoly inv1(const QPoly& p) const {
    if (depth_ == 0) return qpoly::from_coeffs({1 / p.c[0]});
    auto eg = upoly::ext_gcd(qpoly::kQ, p, m1_);
    if (eg.g.degree() > 0) {
      SplitEvent ev;
      ev.level = 1;
      ev.factor1 = eg.g;
      throw ev;
    }
    return reduce1(eg.s);
  }

  static std::vector<QPoly> reduce_coeffs(const NumberField& f, const std::vector<QPoly>& coeffs) {
    std::vector<QPoly> out;
    for (const auto& p : coeffs) out.push_back(f.reduce1(p));
    return out;
  }

  int depth_ = 0;
  QPoly m1_;
  std::vector<QPoly> m2_;
  std::array<std::string, 2> names_{"a", "b"};
  std::vector<RealEmbedding> real_;
};

/// Result of an inversion under dynamic evaluation.
using InvertResult = std::variant<NfElement, SplitEvent>;

inline InvertResult nf_try_invert(const NumberField& k, const NfElement& x) {
  try {
    return k.inv(x);
  } catch (const SplitEvent& ev) {
    return ev;
  }
}

/// Exact zero test of a reduced element (zero divisors are not zero).
inline bool nf_is_zero(const NumberField& k, const NfElement& x) { return k.reduce(x).is_zero(); }

} // namespace rsnorm

#endif // RSNORM_NUMBER_FIELD_HPP
