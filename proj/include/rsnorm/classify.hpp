#ifndef RSNORM_CLASSIFY_HPP
#define RSNORM_CLASSIFY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "groebner.hpp"

namespace rsnorm {

enum class Verdict { Yes, No, Unverified };

inline const char* verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Yes: return "yes";
  case Verdict::No: return "no";
  case Verdict::Unverified: return "unverified";
  }
  return "unverified";
}

/// Where a value is assigned: exact rational coordinates or an id from the bad-point list.
struct PointLocator {
  std::optional<std::pair<Rational, Rational>> at;
  std::optional<int> index;
};

/// The value is a polynomial in the point's coordinates x, y (a constant for rational points).
struct ValueAssignment {
  PointLocator where;
  MPoly value;
};

/// f = p/q on the curve, with values at the real points where q vanishes.
struct CurveFunction {
  PlaneCurve curve;
  MPoly p, q;
  std::vector<BadPoint> bad;
  std::map<int, MPoly> values; // real point id -> value
};

struct GraphIdeal {
  std::vector<MPoly> generators;
  GroebnerBasis gb_lex;
};

/// Fiber of the graph closure over one bad point (a real point, or the non-real part of a class).
struct FiberReport {
  std::string point;
  bool real = false;
  int point_id = -1;
  NumberField tower;              // branch the fiber lives over
  bool y_first = false;           // tower level 1 is the y-coordinate
  NfPoly fiber;                   // monic generator of the fiber ideal in t
  int distinct_complex = 0;
  int distinct_real = -1;         // real points only
  std::optional<NfElement> singleton;
  std::optional<bool> matches;    // real points with an assigned value
  bool assigned_is_root = false;  // the assigned value is among the fiber roots
};

struct ConditionFailure {
  int condition = 0;
  std::string point;
  std::string detail;
};

struct Verdicts {
  Verdict regular = Verdict::No, k_plus = Verdict::No, k_r_plus = Verdict::No, integral = Verdict::No;
};

struct ClassificationReport {
  Verdicts verdicts;
  std::optional<MPoly> integral_relation;
  std::optional<MPoly> regular_witness;
  std::optional<MPoly> regular_obstruction;
  std::vector<FiberReport> fibers;
  std::vector<ConditionFailure> failures;
  std::vector<std::string> caveats;
  bool hierarchy_consistent = true;
};

namespace detail {

inline Var level_var(const BadPoint& p, int level) { return (level == 1) != p.y_first ? X : Y; }

} // namespace detail

/// A tower element as a polynomial in the point's coordinates.
inline MPoly element_to_mpoly(const BadPoint& p, const NfElement& e) {
  MPoly out;
  const Var v1 = detail::level_var(p, 1), v2 = detail::level_var(p, 2);
  for (std::size_t i = 0; i < e.c.size(); ++i) out += mpoly::from_upoly(e.c[i], v1) * MPoly::var(v2, static_cast<unsigned>(i));
  return out;
}

/// A polynomial in t over a point's tower as a polynomial in t, x, y.
inline MPoly fiber_to_mpoly(const BadPoint& p, const NfPoly& f) {
  MPoly out;
  for (std::size_t j = 0; j < f.c.size(); ++j) out += element_to_mpoly(p, f.c[j]) * MPoly::var(T, static_cast<unsigned>(j));
  return out;
}

inline CurveFunction make_function(const PlaneCurve& curve, const MPoly& p, const MPoly& q,
                                   const std::vector<ValueAssignment>& assignments) {
  for (const auto* e : {&p, &q})
    if (e->uses(S) || e->uses(T)) fail(ErrorCode::Precondition, "numerator and denominator are polynomials in x and y");
  if (q.is_zero()) fail(ErrorCode::DivisionByZero, "denominator is zero");
  CurveFunction f{curve, p, q, bad_locus(curve, q), {}};
  std::map<int, std::string> labels;
  std::map<std::pair<Rational, Rational>, int> rational_ids;
  for (const auto& b : f.bad)
    for (const auto& e : b.tower.real_embeddings()) {
      labels[e.id] = point_label(b, e);
      if (b.class_size() == 1) {
        PointValues c = b.coords();
        rational_ids[{*b.tower.as_rational(c.x), *b.tower.as_rational(c.y)}] = e.id;
      }
    }
  for (const auto& a : assignments) {
    if (a.value.uses(S) || a.value.uses(T)) fail(ErrorCode::Precondition, "assigned values are polynomials in x and y");
    int id = -1;
    if (a.where.index) {
      id = *a.where.index;
      if (!labels.count(id)) fail(ErrorCode::ExtraAssignment, "no real bad point with index " + std::to_string(id));
    } else if (a.where.at) {
      auto it = rational_ids.find(*a.where.at);
      const std::string loc = "(" + rsnorm::to_string(a.where.at->first) + ", " + rsnorm::to_string(a.where.at->second) + ")";
      if (it == rational_ids.end()) fail(ErrorCode::ExtraAssignment, "no real bad point at " + loc);
      id = it->second;
    } else {
      fail(ErrorCode::BadJob, "assignment without a point locator");
    }
    if (f.values.count(id)) fail(ErrorCode::DuplicateAssignment, "two values given at " + labels[id]);
    f.values[id] = a.value;
  }
  for (const auto& [id, label] : labels)
    if (!f.values.count(id)) fail(ErrorCode::MissingAssignment, "missing value at " + label);
  return f;
}

/// J = <F, q*t - p> : q^infinity with its lex basis (t > x > y).
inline GraphIdeal graph_ideal(const CurveFunction& f) {
  std::vector<MPoly> gens{f.curve.F(), f.q * mpoly::t() - f.p};
  return {gens, saturate(gens, f.q)};
}

/// Monic-in-t generator of J restricted to Q[x, t], if one exists.
inline std::optional<MPoly> xt_relation(const GraphIdeal& g) {
  // move y to the top of the lex order and eliminate it
  std::vector<MPoly> gens;
  for (const auto& b : g.gb_lex.basis) gens.push_back(mpoly::swap_vars(b, Y, S));
  GroebnerBasis h = buchberger(gens, MonomialOrder::Lex);
  std::optional<MPoly> best;
  for (const auto& b : eliminate(h, var_bit(S))) {
    const Monomial lm = leading_monomial(b, MonomialOrder::Lex);
    if (lm[T] == 0 || lm[X] != 0) continue;
    if (!best || lm[T] < leading_monomial(*best, MonomialOrder::Lex)[T]) best = b;
  }
  return best;
}

/// Integrality certificate: a monic relation in t; among equal t-degrees the one free of y wins.
inline std::optional<MPoly> integral_relation(const GraphIdeal& g) {
  auto w = monic_in_t_witness(g.gb_lex);
  if (!w) return std::nullopt;
  auto r = xt_relation(g);
  if (r && r->degree(T) <= w->degree(T)) return r;
  return w;
}

namespace detail {

/// Fiber generator over the point coords(k); SplitEvents propagate to the caller.
inline NfPoly fiber_generator(const NumberField& k, const GraphIdeal& g, const PointValues& at) {
  NfPoly acc;
  bool any = false;
  for (const auto& b : g.gb_lex.basis) {
    NfPoly s = specialize_t(k, b, at);
    if (s.is_zero()) continue;
    acc = any ? upoly::gcd(k, acc, s) : upoly::monic(k, s);
    any = true;
  }
  if (!any) fail(ErrorCode::Internal, "graph closure contains a vertical line");
  if (acc.degree() <= 0) return acc;
  return upoly::monic(k, upoly::squarefree_part(k, acc));
}

inline const MPoly* assigned(const CurveFunction& f, int id) {
  auto it = f.values.find(id);
  return it == f.values.end() ? nullptr : &it->second;
}

} // namespace detail

/// Fiber over one real point of a bad class.
inline FiberReport fiber_report(const GraphIdeal& g, const BadPoint& pt, const RealEmbedding& emb,
                                const MPoly* value) {
  return at_embedding(pt.tower, emb, [&](const NumberField& k) {
    FiberReport r;
    r.point = point_label(pt, emb);
    r.real = true;
    r.point_id = emb.id;
    r.tower = k;
    r.y_first = pt.y_first;
    const PointValues at = pt.coords(k);
    r.fiber = detail::fiber_generator(k, g, at);
    r.distinct_complex = std::max(r.fiber.degree(), 0);
    r.distinct_real = r.distinct_complex > 0 ? real_root_count(k, r.fiber, emb, std::nullopt, std::nullopt) : 0;
    if (r.distinct_complex == 1) r.singleton = k.neg(r.fiber.c[0]);
    if (value) {
      const NfElement v = eval_at(k, *value, at);
      if (r.distinct_complex > 0) r.assigned_is_root = sign_at(k, upoly::eval(k, r.fiber, v), emb) == 0;
      r.matches = r.singleton && sign_at(k, k.sub(*r.singleton, v), emb) == 0;
    }
    return r;
  });
}

/// Fibers over the points of a class, split into branches; used for the non-real part.
inline std::vector<FiberReport> class_fiber_reports(const GraphIdeal& g, const BadPoint& pt) {
  std::vector<FiberReport> out;
  auto branches = over_branches(pt.tower, [&](const NumberField& k) { return detail::fiber_generator(k, g, pt.coords(k)); });
  for (auto& [k, fib] : branches) {
    if (static_cast<int>(k.real_embeddings().size()) == k.conjugates()) continue;
    FiberReport r;
    BadPoint branch{k, pt.y_first};
    r.point = class_label(branch);
    r.tower = k;
    r.y_first = pt.y_first;
    r.fiber = fib;
    r.distinct_complex = std::max(fib.degree(), 0);
    if (r.distinct_complex == 1) r.singleton = k.neg(fib.c[0]);
    out.push_back(std::move(r));
  }
  return out;
}

/// All fiber reports: one per real point in id order, then the non-real parts of each class.
inline std::vector<FiberReport> fiber_reports(const CurveFunction& f, const GraphIdeal& g) {
  std::vector<FiberReport> real, nonreal;
  for (const auto& b : f.bad) {
    for (const auto& e : b.tower.real_embeddings()) real.push_back(fiber_report(g, b, e, detail::assigned(f, e.id)));
    if (b.has_nonreal())
      for (auto& r : class_fiber_reports(g, b)) nonreal.push_back(std::move(r));
  }
  std::sort(real.begin(), real.end(), [](const auto& a, const auto& b) { return a.point_id < b.point_id; });
  for (auto& r : nonreal) real.push_back(std::move(r));
  return real;
}

/// Text of a fiber generator as a polynomial in t (and the point coordinates).
inline std::string fiber_text(const FiberReport& r) {
  BadPoint b{r.tower, r.y_first};
  return mpoly::to_string(fiber_to_mpoly(b, r.fiber));
}

struct RegularResult {
  bool yes = false;
  std::optional<MPoly> h;
  std::optional<MPoly> obstruction; // normal form of p modulo <F, q>
  std::string mismatch;             // a point where h differs from the assigned value
};

inline RegularResult is_regular(const CurveFunction& f, const GraphIdeal& g) {
  RegularResult r;
  GroebnerBasis fq = buchberger({f.curve.F(), f.q}, MonomialOrder::Lex);
  MPoly nf = normal_form(f.p, fq);
  if (!nf.is_zero()) {
    r.obstruction = nf;
    return r;
  }
  for (const auto& b : g.gb_lex.basis) {
    const Monomial lm = leading_monomial(b, MonomialOrder::Lex);
    if (lm == mono::unit(T)) r.h = mpoly::t() - b;
  }
  if (!r.h) fail(ErrorCode::Internal, "regular function without a linear relation in the graph ideal");
  GroebnerBasis fb = buchberger({f.curve.F()}, MonomialOrder::Lex);
  if (!ideal_contains(fb, f.p - f.q * *r.h)) fail(ErrorCode::Internal, "regular witness fails p = q*h on the curve");
  for (const auto& b : f.bad)
    for (const auto& e : b.tower.real_embeddings()) {
      const MPoly* v = detail::assigned(f, e.id);
      if (!v) continue;
      const bool same = at_embedding(b.tower, e, [&](const NumberField& k) {
        const PointValues at = b.coords(k);
        return sign_at(k, k.sub(eval_at(k, *r.h, at), eval_at(k, *v, at)), e) == 0;
      });
      if (!same && r.mismatch.empty()) r.mismatch = point_label(b, e);
    }
  r.yes = r.mismatch.empty();
  return r;
}

inline ClassificationReport classify(const CurveFunction& f, const GraphIdeal& g) {
  ClassificationReport rep;
  rep.integral_relation = integral_relation(g);
  const bool integral = rep.integral_relation.has_value();
  rep.verdicts.integral = integral ? Verdict::Yes : Verdict::No;
  if (!integral)
    rep.failures.push_back({2, "", "no monic relation in t: the projection of the graph closure is not finite"});

  RegularResult reg = is_regular(f, g);
  rep.verdicts.regular = reg.yes ? Verdict::Yes : Verdict::No;
  rep.regular_witness = reg.h;
  rep.regular_obstruction = reg.obstruction;

  rep.fibers = fiber_reports(f, g);
  bool cond3 = true, cond4 = true, nonreal_singletons = true;
  for (const auto& r : rep.fibers) {
    if (r.real) {
      if (!(r.distinct_real == 1 && r.assigned_is_root)) {
        cond3 = false;
        rep.failures.push_back({3, r.point, "real fiber roots " + std::to_string(r.distinct_real) +
                                                (r.assigned_is_root ? ", including the assigned value" : ", assigned value not among them")});
      }
      if (!(r.distinct_complex == 1 && r.matches.value_or(false))) {
        cond4 = false;
        rep.failures.push_back({4, r.point, "fiber " + fiber_text(r) + " has " + std::to_string(r.distinct_complex) +
                                                " distinct complex roots (" + std::to_string(r.distinct_real) + " real)"});
      }
    } else if (r.distinct_complex != 1) {
      nonreal_singletons = false;
      rep.failures.push_back({5, r.point, "fiber " + fiber_text(r) + " has " + std::to_string(r.distinct_complex) +
                                              " distinct complex roots over a non-real class"});
    }
  }
  const bool krplus = integral && cond3 && cond4;
  const bool kplus = krplus && nonreal_singletons;
  rep.verdicts.k_r_plus = krplus ? Verdict::Yes : Verdict::No;
  rep.verdicts.k_plus = kplus ? Verdict::Yes : Verdict::No;
  if (!f.curve.realness_certified()) {
    rep.caveats.push_back(f.curve.realness_checked() ? "curve realness unverified: some factor has no certified real point"
                                                     : "curve realness not checked");
    rep.verdicts.k_r_plus = Verdict::Unverified;
    rep.verdicts.k_plus = Verdict::Unverified;
  }
  auto le = [](Verdict a, Verdict b) { return a != Verdict::Yes || b != Verdict::No; };
  rep.hierarchy_consistent = le(rep.verdicts.regular, rep.verdicts.k_plus) && le(rep.verdicts.k_plus, rep.verdicts.k_r_plus) &&
                             le(rep.verdicts.k_r_plus, rep.verdicts.integral) && le(rep.verdicts.regular, rep.verdicts.integral) &&
                             (!reg.yes || kplus) && (!kplus || krplus) && (!krplus || integral);
  return rep;
}

inline ClassificationReport classify(const CurveFunction& f) { return classify(f, graph_ideal(f)); }

inline bool in_KRplus(const ClassificationReport& r) { return r.verdicts.k_r_plus == Verdict::Yes; }
inline bool in_Kplus(const ClassificationReport& r) { return r.verdicts.k_plus == Verdict::Yes; }

struct SubintegralResult {
  bool r_subintegral = true;
  bool subintegral = true;
  std::vector<std::string> witnesses;
};

namespace detail {

/// Generator of I intersected with Q[v] for a zero-dimensional ideal I in t, x, y.
inline MPoly eliminant(const std::vector<MPoly>& gens, Var v) {
  std::vector<MPoly> moved;
  for (const auto& p : gens) moved.push_back(v == Y ? p : mpoly::swap_vars(p, v, Y));
  GroebnerBasis g = buchberger(moved, MonomialOrder::Lex);
  for (const auto& b : g.basis)
    if (!b.uses(S) && !b.uses(T) && !b.uses(X)) return v == Y ? b : mpoly::swap_vars(b, v, Y);
  fail(ErrorCode::Internal, "ideal is not zero-dimensional");
}

/// Number of distinct complex points of a zero-dimensional ideal (radical from squarefree eliminants in each variable).
inline long distinct_points(std::vector<MPoly> gens) {
  std::vector<MPoly> extra;
  for (Var v : {T, X, Y}) {
    MPoly e = eliminant(gens, v);
    extra.push_back(mpoly::from_upoly(qpoly::squarefree_part(mpoly::to_upoly(e, v)), v));
  }
  for (auto& e : extra) gens.push_back(std::move(e));
  GroebnerBasis g = buchberger(gens, MonomialOrder::GRevLex);
  auto n = count_standard_monomials(g, var_bit(T) | var_bit(X) | var_bit(Y));
  if (!n) fail(ErrorCode::Internal, "ideal is not zero-dimensional");
  return *n;
}

} // namespace detail

/// Whether the graph closure maps bijectively onto the curve over real points (and over
/// all points). Counts the points of J + (class equations) per bad class; classes mixing
/// real and non-real points with extra fiber points fall back to the per-point fibers.
inline SubintegralResult verify_r_subintegral(const CurveFunction& f, const GraphIdeal& g) {
  if (!monic_in_t_witness(g.gb_lex)) fail(ErrorCode::NonIntegral, "the function is not integral over the curve");
  SubintegralResult res;
  for (const auto& b : f.bad) {
    std::vector<MPoly> gens = g.gb_lex.basis;
    const Var v1 = detail::level_var(b, 1), v2 = detail::level_var(b, 2);
    gens.push_back(mpoly::from_upoly(b.tower.m1(), v1));
    MPoly m2;
    for (std::size_t i = 0; i < b.tower.m2().size(); ++i)
      m2 += mpoly::from_upoly(b.tower.m2()[i], v1) * MPoly::var(v2, static_cast<unsigned>(i));
    gens.push_back(m2);
    const long points = detail::distinct_points(gens);
    if (points == b.class_size()) continue;
    res.subintegral = false;
    res.witnesses.push_back(class_label(b) + ": " + std::to_string(points) + " points over " +
                            std::to_string(b.class_size()));
    if (b.real_count() == 0) continue;
    if (b.real_count() == b.class_size()) {
      res.r_subintegral = false;
      continue;
    }
    for (const auto& e : b.tower.real_embeddings()) {
      FiberReport r = fiber_report(g, b, e, nullptr);
      if (r.distinct_complex != 1) {
        res.r_subintegral = false;
        res.witnesses.push_back(r.point + ": fiber " + fiber_text(r));
      }
    }
  }
  return res;
}

inline SubintegralResult verify_r_subintegral(const CurveFunction& f) { return verify_r_subintegral(f, graph_ideal(f)); }

/// Q[x, y, t]/J with its certificates.
struct Presentation {
  std::vector<MPoly> relations;
  MPoly integral_relation;
  std::vector<MPoly> curve_relations; // J restricted to Q[x, y]
  std::vector<FiberReport> fibers;
};

inline Presentation present_extension(const CurveFunction& f, const GraphIdeal& g) {
  auto rel = integral_relation(g);
  if (!rel) fail(ErrorCode::NonIntegral, "the function is not integral over the curve");
  Presentation pr;
  pr.relations = g.gb_lex.basis;
  pr.integral_relation = *rel;
  pr.curve_relations = eliminate(g.gb_lex, var_bit(T));
  GroebnerBasis fb = buchberger({f.curve.F()}, MonomialOrder::Lex);
  if (pr.curve_relations != fb.basis)
    fail(ErrorCode::NotBirational, "eliminating t does not recover the curve equation");
  pr.fibers = fiber_reports(f, g);
  return pr;
}

} // namespace rsnorm

#endif // RSNORM_CLASSIFY_HPP
