#ifndef RSNORM_CURVE_HPP
#define RSNORM_CURVE_HPP

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bivariate.hpp"
#include "embedding.hpp"
#include "mpoly.hpp"
#include "tower_eval.hpp"

namespace rsnorm {

/// A conjugacy class of closed points given by a triangular system m1(x) = 0, m2(x, y) = 0.
/// Real points of the class are the tower's real embeddings; their ids are global within
/// the enumeration that produced them.
struct BadPoint {
  NumberField tower;
  /// Level 1 is the y-coordinate (only for the y-first elimination).
  bool y_first = false;

  int class_size() const { return tower.conjugates(); }
  int real_count() const { return static_cast<int>(tower.real_embeddings().size()); }
  bool has_nonreal() const { return class_size() > real_count(); }
  PointValues coords(const NumberField& k) const {
    PointValues p = tower_point(k);
    if (y_first) std::swap(p.x, p.y);
    return p;
  }
  PointValues coords() const { return coords(tower); }
};

enum class Realness { Certified, Unverified };

inline const char* realness_name(Realness r) { return r == Realness::Certified ? "certified" : "unverified"; }

/// Realness verdict for one factor of F; `witness` names the nonsingular real point found.
struct FactorRealness {
  MPoly factor;
  Realness status = Realness::Unverified;
  std::string witness;
};

class PlaneCurve;
std::vector<BadPoint> singular_locus(const PlaneCurve& curve);

/// Validated plane curve V(F): F nonzero, nonconstant and squarefree. Immutable once
/// built; the singular locus is computed on first use.
class PlaneCurve {
 public:
  const MPoly& F() const { return f_; }
  const std::vector<FactorRealness>& realness() const { return realness_; }
  bool realness_checked() const { return checked_; }
  bool realness_certified() const {
    return checked_ && std::all_of(realness_.begin(), realness_.end(),
                                   [](const FactorRealness& r) { return r.status == Realness::Certified; });
  }
  const std::vector<BadPoint>& singular_points() const {
    std::call_once(lazy_->once, [&] { lazy_->points = compute_singular(); });
    return lazy_->points;
  }

  PlaneCurve with_realness(std::vector<FactorRealness> r) const {
    PlaneCurve c = *this;
    c.realness_ = std::move(r);
    c.checked_ = true;
    return c;
  }

 private:
  friend PlaneCurve make_curve(const MPoly& F);
  explicit PlaneCurve(MPoly f) : f_(std::move(f)), lazy_(std::make_shared<Lazy>()) {}
  std::vector<BadPoint> compute_singular() const;

  struct Lazy {
    std::once_flag once;
    std::vector<BadPoint> points;
  };
  MPoly f_;
  std::vector<FactorRealness> realness_;
  bool checked_ = false;
  std::shared_ptr<Lazy> lazy_;
};

inline PlaneCurve make_curve(const MPoly& F) {
  if (F.uses(S) || F.uses(T)) fail(ErrorCode::Precondition, "a curve is defined by a polynomial in x and y");
  if (F.is_zero()) fail(ErrorCode::ConstantCurve, "the zero polynomial does not define a curve");
  if (F.is_constant()) fail(ErrorCode::ConstantCurve, "a nonzero constant defines the empty set");
  const MPoly fx = mpoly::derivative(F, X), fy = mpoly::derivative(F, Y);
  MPoly d = fx.is_zero() ? fy : fy.is_zero() ? fx : gcd_xy(fx, fy);
  MPoly g = gcd_xy(F, d);
  if (!g.is_constant())
    fail(ErrorCode::NonSquarefree, "curve polynomial is not squarefree; repeated factor " + mpoly::to_string(g));
  return PlaneCurve(mpoly::primitive(F));
}

namespace detail {

/// Rationals ordered by height: 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, ...
inline std::vector<Rational> sample_points(int count) {
  std::vector<Rational> out{Rational(0)};
  for (long h = 1; static_cast<int>(out.size()) < count; ++h)
    for (long den = 1; den <= h; ++den)
      for (long num = 1; num <= h; ++num) {
        if (std::max(num, den) != h || std::gcd(num, den) != 1) continue;
        out.push_back(Rational(num, den));
        out.push_back(Rational(-num, den));
      }
  out.resize(static_cast<std::size_t>(count));
  return out;
}

inline std::string fixed_decimal(const Rational& v, int digits = 10) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(v) * scale + Rational(1, 2);
  Integer n = scaled.get_num() / scaled.get_den();
  std::string body = n.get_str();
  if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits + 1) - body.size(), '0');
  body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  return (sign(v) < 0 && n != 0 ? "-" : "") + body;
}

/// Splits off the rational roots of a squarefree polynomial as linear pieces.
inline std::vector<QPoly> split_rational_roots(const QPoly& p) {
  std::vector<QPoly> out;
  QPoly rest = upoly::monic(qpoly::kQ, p);
  for (const auto& r : rational_roots(rest)) {
    QPoly lin = qpoly::linear(r);
    out.push_back(lin);
    rest = upoly::exact_div(qpoly::kQ, rest, lin);
  }
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

inline MPoly qpoly_in(const QPoly& p, Var v) { return mpoly::from_upoly(p, v); }

} // namespace detail

/// Factors of F used for realness: vertical and horizontal line pieces split off by
/// content, rational lines separated, and the remaining part kept whole.
inline std::vector<MPoly> realness_factors(const MPoly& F) {
  std::vector<MPoly> out;
  BiPoly fy = bivariate::from_mpoly(F, Y, X);
  QPoly cx = bivariate::content(fy);
  MPoly rest = bivariate::to_mpoly(bivariate::primitive_part(fy), Y, X);
  BiPoly fx = bivariate::from_mpoly(rest, X, Y);
  QPoly cy = bivariate::content(fx);
  rest = bivariate::to_mpoly(bivariate::primitive_part(fx), X, Y);
  if (cx.degree() > 0)
    for (const auto& p : detail::split_rational_roots(cx)) out.push_back(mpoly::primitive(detail::qpoly_in(p, X)));
  if (cy.degree() > 0)
    for (const auto& p : detail::split_rational_roots(cy)) out.push_back(mpoly::primitive(detail::qpoly_in(p, Y)));
  if (!rest.is_constant()) out.push_back(mpoly::primitive(rest));
  return out;
}

/// Searches rational samples for a nonsingular real point on each factor. Never claims
/// that a factor has no real points.
inline std::vector<FactorRealness> certify_realness(const PlaneCurve& curve, int budget) {
  std::vector<FactorRealness> out;
  const auto samples = detail::sample_points(std::max(budget, 1));
  for (const auto& g : realness_factors(curve.F())) {
    FactorRealness r{g, Realness::Unverified, ""};
    const bool has_y = g.uses(Y), has_x = g.uses(X);
    if (!has_y || !has_x) {
      // a line pencil h(v) = 0: every real root gives real nonsingular points
      const Var v = has_y ? Y : X;
      QPoly h = mpoly::to_upoly(g, v);
      auto roots = isolate_real_roots(h);
      if (!roots.empty()) {
        r.status = Realness::Certified;
        const std::string val = h.degree() == 1 ? rsnorm::to_string(-h.c[0] / h.c[1])
                                                 : "~" + detail::fixed_decimal(roots[0].mid_point(), 6);
        r.witness = std::string(var_name(v)) + " = " + val;
      }
      out.push_back(std::move(r));
      continue;
    }
    const int dy = g.degree(Y);
    for (int i = 0; i < budget && r.status == Realness::Unverified; ++i) {
      const Rational& x0 = samples[static_cast<std::size_t>(i)];
      QPoly h = mpoly::to_upoly(mpoly::substitute(g, X, MPoly(x0)), Y);
      if (h.degree() != dy || !sturm::is_squarefree(h)) continue;
      auto roots = isolate_real_roots(h);
      if (roots.empty()) continue;
      r.status = Realness::Certified;
      r.witness = "x = " + rsnorm::to_string(x0) + ", y in [" + rsnorm::to_string(roots[0].low) + ", " +
                  rsnorm::to_string(roots[0].high) + "]";
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline PlaneCurve with_certified_realness(const PlaneCurve& curve, int budget) {
  return curve.with_realness(certify_realness(curve, budget));
}

/// Exact coordinates when rational, else fixed-point decimals prefixed by "~".
inline std::string point_label(const BadPoint& p, const RealEmbedding& emb) {
  const auto& k = p.tower;
  std::string sx, sy;
  if (k.conjugates() == 1) {
    PointValues c = p.coords();
    sx = rsnorm::to_string(*k.as_rational(c.x));
    sy = rsnorm::to_string(*k.as_rational(c.y));
  } else {
    auto [a, b] = approximate(k, emb, Rational(1, 1000000000000L));
    if (p.y_first) std::swap(a, b);
    sx = "~" + detail::fixed_decimal(a);
    sy = "~" + detail::fixed_decimal(b);
  }
  return "(" + sx + ", " + sy + ")";
}

/// The defining triangular system, e.g. "{x^2 + 1 = 0, y = 0}".
inline std::string class_label(const BadPoint& p) {
  const Var v1 = p.y_first ? Y : X, v2 = p.y_first ? X : Y;
  MPoly m1 = detail::qpoly_in(p.tower.m1(), v1);
  MPoly m2;
  const auto& coeffs = p.tower.m2();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    m2 += detail::qpoly_in(coeffs[i], v1) * MPoly::var(v2, static_cast<unsigned>(i));
  return "{" + mpoly::to_string(m1) + " = 0, " + mpoly::to_string(m2) + " = 0}";
}

namespace detail {

[[noreturn]] inline void not_zero_dimensional(const MPoly& F) {
  fail(ErrorCode::ZeroDivisor, "the system is not zero-dimensional on the curve " + mpoly::to_string(F));
}

inline std::vector<QPoly> unlift(const NfPoly& p) {
  std::vector<QPoly> out;
  for (const auto& e : p.c) out.push_back(e.is_zero() ? QPoly{} : e.c[0]);
  return out;
}

/// Orders real points by (x, y) and assigns ids; classes with real points first.
inline void order_points(std::vector<BadPoint>& pts) {
  struct Ref {
    std::size_t cls, emb;
  };
  std::vector<Ref> refs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts[i].tower.real_embeddings().size(); ++j) refs.push_back({i, j});
  std::vector<Box> boxes;
  boxes.reserve(refs.size());
  for (const auto& r : refs) boxes.emplace_back(pts[r.cls].tower, pts[r.cls].tower.real_embeddings()[r.emb]);
  auto same_x = [&](const Ref& u, const Ref& v) {
    const auto& ku = pts[u.cls].tower;
    const auto& kv = pts[v.cls].tower;
    return ku.m1() == kv.m1() && ku.real_embeddings()[u.emb].a == kv.real_embeddings()[v.emb].a;
  };
  // decide each pair once the enclosures separate; -1 less, 1 greater, 0 undecided
  auto decide = [&](std::size_t u, std::size_t v) {
    Interval iu = boxes[u].a(), iv = boxes[v].a();
    if (same_x(refs[u], refs[v])) {
      iu = boxes[u].b();
      iv = boxes[v].b();
    }
    if (iu.hi < iv.lo) return -1;
    if (iv.hi < iu.lo) return 1;
    return 0;
  };
  std::vector<std::size_t> order(refs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (;;) {
    bool ok = true;
    for (std::size_t u = 0; u < refs.size() && ok; ++u)
      for (std::size_t v = u + 1; v < refs.size() && ok; ++v)
        if (decide(u, v) == 0) ok = false;
    if (ok) break;
    for (auto& b : boxes) b.refine();
  }
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return u != v && decide(u, v) < 0; });
  std::vector<std::vector<RealEmbedding>> embs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) embs[i] = pts[i].tower.real_embeddings();
  std::vector<int> first_id(pts.size(), -1);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Ref& r = refs[order[rank]];
    embs[r.cls][r.emb].id = static_cast<int>(rank);
    if (first_id[r.cls] < 0) first_id[r.cls] = static_cast<int>(rank);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::sort(embs[i].begin(), embs[i].end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    pts[i].tower.set_real_embeddings(std::move(embs[i]));
  }
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t u, std::size_t v) {
    const int fu = first_id[u], fv = first_id[v];
    if ((fu >= 0) != (fv >= 0)) return fu >= 0;
    if (fu >= 0) return fu < fv;
    return NumberField::canonical_less(pts[u].tower, pts[v].tower);
  });
  std::vector<BadPoint> sorted;
  for (auto i : idx) sorted.push_back(std::move(pts[i]));
  pts = std::move(sorted);
}

} // namespace detail

/// Closed points of V(F, g_1, ..., g_k) as triangular systems, in deterministic order.
/// The system must be zero-dimensional on every component of F.
inline std::vector<BadPoint> triangular_decompose(const MPoly& F0, const std::vector<MPoly>& gs0,
                                                  bool y_first = false) {
  MPoly F = y_first ? mpoly::swap_vars(F0, X, Y) : F0;
  std::vector<MPoly> gs;
  for (const auto& g : gs0) gs.push_back(y_first ? mpoly::swap_vars(g, X, Y) : g);

  const BiPoly fb = bivariate::from_mpoly(F);
  const QPoly cont = bivariate::content(fb);
  const BiPoly fp = bivariate::primitive_part(fb);

  std::vector<QPoly> cands;
  QPoly m;
  if (fp.degree() >= 1) {
    bool have = false;
    for (const auto& g : gs) {
      BiPoly gb = bivariate::from_mpoly(g);
      QPoly r = gb.degree() <= 0 ? (gb.is_zero() ? QPoly{} : gb.c[0]) : bivariate::resultant(fp, gb);
      if (r.is_zero()) continue;
      for (const auto& [piece, mult] : qpoly::squarefree_factorization(r)) cands.push_back(piece);
      m = have ? qpoly::gcd(m, r) : upoly::monic(qpoly::kQ, r);
      have = true;
    }
    if (!have) detail::not_zero_dimensional(F0);
  }
  if (cont.degree() > 0) cands.push_back(cont);
  const QPoly region = upoly::mul(qpoly::kQ, m.is_zero() ? qpoly::from_coeffs({1}) : m, cont);

  std::vector<QPoly> pieces;
  for (const auto& b : qpoly::coprime_basis(cands)) {
    if (qpoly::gcd(b, region).degree() < b.degree()) continue;
    for (auto& p : detail::split_rational_roots(b)) pieces.push_back(std::move(p));
  }
  std::sort(pieces.begin(), pieces.end(), qpoly::canonical_less);

  std::vector<BadPoint> out;
  for (const auto& piece : pieces) {
    NumberField k1 = NumberField::level1(piece, "x");
    auto branches = over_branches(k1, [&](const NumberField& k) -> std::optional<std::vector<QPoly>> {
      NfPoly acc;
      bool any = false;
      auto absorb = [&](const MPoly& p) {
        NfPoly s = specialize_x(k, p);
        if (s.is_zero()) return;
        acc = any ? upoly::gcd(k, acc, s) : upoly::monic(k, s);
        any = true;
      };
      absorb(F);
      for (const auto& g : gs) absorb(g);
      if (!any) detail::not_zero_dimensional(F0);
      if (acc.degree() <= 0) return std::nullopt;
      acc = upoly::monic(k, upoly::squarefree_part(k, acc));
      return detail::unlift(acc);
    });
    for (auto& [k, m2] : branches) {
      if (!m2) continue;
      BadPoint p;
      p.tower = with_real_embeddings(NumberField::level2(k.m1(), *m2, y_first ? "y" : "x", y_first ? "x" : "y"));
      p.y_first = y_first;
      out.push_back(std::move(p));
    }
  }
  if (!y_first) detail::order_points(out);
  else {
    int id = 0;
    for (auto& p : out) {
      auto embs = p.tower.real_embeddings();
      for (auto& e : embs) e.id = id++;
      p.tower.set_real_embeddings(std::move(embs));
    }
  }
  return out;
}

inline std::vector<BadPoint> PlaneCurve::compute_singular() const {
  return triangular_decompose(f_, {mpoly::derivative(f_, X), mpoly::derivative(f_, Y)});
}

inline std::vector<BadPoint> singular_locus(const PlaneCurve& curve) { return curve.singular_points(); }

/// Points of the curve where q vanishes. q must not vanish on any component.
inline std::vector<BadPoint> bad_locus(const PlaneCurve& curve, const MPoly& q, bool y_first = false) {
  if (q.is_zero()) fail(ErrorCode::DivisionByZero, "denominator is zero");
  if (q.uses(S) || q.uses(T)) fail(ErrorCode::Precondition, "denominator must be a polynomial in x and y");
  if (q.is_constant()) return {};
  MPoly g = gcd_xy(curve.F(), q);
  if (!g.is_constant())
    fail(ErrorCode::ZeroDivisor, "denominator vanishes on the component " + mpoly::to_string(g) + " = 0");
  return triangular_decompose(curve.F(), {q}, y_first);
}

/// Number of closed points counted with conjugates.
inline int total_points(const std::vector<BadPoint>& pts) {
  int n = 0;
  for (const auto& p : pts) n += p.class_size();
  return n;
}

} // namespace rsnorm

#endif // RSNORM_CURVE_HPP
