#ifndef RSNORM_GROEBNER_HPP
#define RSNORM_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mpoly.hpp"

namespace rsnorm {

/// Reduced Groebner basis: monic, auto-reduced, sorted by ascending leading monomial.
struct GroebnerBasis {
  MonomialOrder order = MonomialOrder::Lex;
  std::vector<MPoly> basis;
  friend bool operator==(const GroebnerBasis&, const GroebnerBasis&) = default;
};

/// Bit set of variables.
using VarSet = unsigned;
inline constexpr VarSet var_bit(Var v) { return 1U << v; }

namespace gb_detail {

struct OTerm {
  std::uint64_t key;
  Monomial m;
  Rational c;
};

/// Terms in ascending order, so the leading term is back().
struct OPoly {
  std::vector<OTerm> t;
  bool is_zero() const { return t.empty(); }
  const OTerm& lead() const { return t.back(); }
};

inline OPoly to_ordered(const MPoly& p, MonomialOrder o) {
  OPoly r;
  for (const auto& term : p.terms()) r.t.push_back({order_key(o, term.m), term.m, term.c});
  std::sort(r.t.begin(), r.t.end(), [](const OTerm& a, const OTerm& b) { return a.key < b.key; });
  return r;
}

inline MPoly from_ordered(const OPoly& p) {
  std::vector<Term> out;
  out.reserve(p.t.size());
  for (const auto& term : p.t) out.push_back({term.m, term.c});
  return MPoly::from_terms(std::move(out));
}

inline void make_monic(OPoly& p) {
  if (p.is_zero() || p.lead().c == 1) return;
  const Rational inv = 1 / p.lead().c;
  for (auto& term : p.t) term.c *= inv;
}

/// a - c * m * b, where every term of b is shifted by m (keys recomputed).
inline OPoly sub_scaled(const OPoly& a, const Rational& c, const Monomial& m, const OPoly& b, MonomialOrder o) {
  OPoly r;
  r.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  std::vector<OTerm> shifted;
  shifted.reserve(b.t.size());
  for (const auto& term : b.t) {
    Monomial mm = mono::mul(term.m, m);
    shifted.push_back({order_key(o, mm), mm, term.c * c});
  }
  while (i < a.t.size() || j < shifted.size()) {
    if (j == shifted.size() || (i < a.t.size() && a.t[i].key < shifted[j].key)) {
      r.t.push_back(a.t[i++]);
    } else if (i == a.t.size() || shifted[j].key < a.t[i].key) {
      shifted[j].c = -shifted[j].c;
      r.t.push_back(std::move(shifted[j++]));
    } else {
      Rational v = a.t[i].c - shifted[j].c;
      if (sign(v) != 0) r.t.push_back({a.t[i].key, a.t[i].m, std::move(v)});
      ++i;
      ++j;
    }
  }
  return r;
}

/// Full reduction of p by the reducers; `preference` orders the candidates whose
/// leading monomial divides the current term (first match when empty).
inline OPoly reduce(OPoly p, const std::vector<const OPoly*>& reducers, MonomialOrder o,
                    const std::vector<std::size_t>* preference = nullptr) {
  std::vector<OTerm> rest; // irreducible terms, collected in descending order
  while (!p.is_zero()) {
    const OTerm& lt = p.lead();
    const OPoly* hit = nullptr;
    if (preference) {
      for (std::size_t idx : *preference)
        if (mono::divides(reducers[idx]->lead().m, lt.m)) {
          hit = reducers[idx];
          break;
        }
    } else {
      for (const OPoly* g : reducers)
        if (mono::divides(g->lead().m, lt.m)) {
          hit = g;
          break;
        }
    }
    if (!hit) {
      rest.push_back(lt);
      p.t.pop_back();
      continue;
    }
    const Rational c = lt.c / hit->lead().c;
    const Monomial q = mono::quotient(lt.m, hit->lead().m);
    p = sub_scaled(p, c, q, *hit, o);
  }
  std::reverse(rest.begin(), rest.end());
  return {std::move(rest)};
}

inline OPoly spoly(const OPoly& f, const OPoly& g, MonomialOrder o) {
  const Monomial l = mono::lcm(f.lead().m, g.lead().m);
  OPoly a = sub_scaled(OPoly{}, Rational(-1) / f.lead().c, mono::quotient(l, f.lead().m), f, o);
  return sub_scaled(a, 1 / g.lead().c, mono::quotient(l, g.lead().m), g, o);
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint64_t key;
};

} // namespace gb_detail

/// Buchberger's algorithm with the product and chain criteria (Gebauer-Moeller update)
/// and the normal selection strategy. Returns the reduced basis.
inline GroebnerBasis buchberger(const std::vector<MPoly>& generators, MonomialOrder order) {
  using namespace gb_detail;
  std::vector<OPoly> polys;
  std::vector<bool> active;
  std::vector<Pair> pairs;

  auto reducers = [&]() {
    std::vector<const OPoly*> r;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k]) r.push_back(&polys[k]);
    return r;
  };

  auto insert = [&](OPoly h) {
    make_monic(h);
    const std::size_t hi = polys.size();
    const Monomial lh = h.lead().m;
    polys.push_back(std::move(h));
    active.push_back(true);

    std::vector<Pair> c, d;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active[g]) continue;
      Monomial l = mono::lcm(lh, polys[g].lead().m);
      c.push_back({g, hi, l, order_key(order, l)});
    }
    while (!c.empty()) {
      Pair p = c.front();
      c.erase(c.begin());
      bool keep = mono::coprime(lh, polys[p.i].lead().m);
      if (!keep) {
        keep = true;
        for (const auto* set : {&c, &d})
          for (const auto& other : *set)
            if (mono::divides(other.lcm, p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> next;
    for (const auto& p : pairs) {
      const Monomial l1 = mono::lcm(polys[p.i].lead().m, lh), l2 = mono::lcm(polys[p.j].lead().m, lh);
      if (mono::divides(lh, p.lcm) && l1 != p.lcm && l2 != p.lcm) continue;
      next.push_back(p);
    }
    for (const auto& p : d)
      if (!mono::coprime(lh, polys[p.i].lead().m)) next.push_back(p);
    pairs = std::move(next);
    for (std::size_t g = 0; g < hi; ++g)
      if (active[g] && mono::divides(lh, polys[g].lead().m)) active[g] = false;
  };

  for (const auto& gen : generators) {
    if (gen.is_zero()) continue;
    OPoly h = reduce(to_ordered(gen, order), reducers(), order);
    if (!h.is_zero()) insert(std::move(h));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.key != b.key) return a.key < b.key;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair p = *best;
    pairs.erase(best);
    OPoly h = reduce(spoly(polys[p.i], polys[p.j], order), reducers(), order);
    if (!h.is_zero()) insert(std::move(h));
  }

  // the active set is minimal; reduce tails against each other
  std::vector<OPoly> minimal;
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (active[k]) minimal.push_back(polys[k]);
  std::vector<OPoly> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<const OPoly*> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(&minimal[l]);
    OPoly g = minimal[k];
    OTerm lead = g.lead();
    g.t.pop_back();
    OPoly tail = reduce(std::move(g), others, order);
    tail.t.push_back(std::move(lead));
    make_monic(tail);
    reduced.push_back(std::move(tail));
  }
  std::sort(reduced.begin(), reduced.end(), [](const OPoly& a, const OPoly& b) { return a.lead().key < b.lead().key; });

  GroebnerBasis out;
  out.order = order;
  for (const auto& g : reduced) out.basis.push_back(from_ordered(g));
  return out;
}

/// Leading monomial under the basis order.
inline Monomial leading_monomial(const MPoly& p, MonomialOrder o) {
  if (p.is_zero()) fail(ErrorCode::Internal, "leading monomial of zero");
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (order_key(o, t.m) > order_key(o, best->m)) best = &t;
  return best->m;
}

/// Remainder of multivariate division by G; zero iff p lies in the ideal.
/// `preference` optionally fixes the order in which basis elements are tried.
inline MPoly normal_form(const MPoly& p, const GroebnerBasis& g, const std::vector<std::size_t>* preference = nullptr) {
  using namespace gb_detail;
  std::vector<OPoly> ord;
  for (const auto& b : g.basis) ord.push_back(to_ordered(b, g.order));
  std::vector<const OPoly*> red;
  for (const auto& b : ord) red.push_back(&b);
  return from_ordered(reduce(to_ordered(p, g.order), red, g.order, preference));
}

inline bool ideal_contains(const GroebnerBasis& g, const MPoly& p) { return normal_form(p, g).is_zero(); }

inline bool ideal_contains(const GroebnerBasis& g, const GroebnerBasis& h) {
  return std::all_of(h.basis.begin(), h.basis.end(), [&](const MPoly& p) { return ideal_contains(g, p); });
}

inline bool uses_any(const MPoly& p, VarSet vars) {
  for (int v = 0; v < kNumVars; ++v)
    if ((vars & var_bit(static_cast<Var>(v))) && p.uses(static_cast<Var>(v))) return true;
  return false;
}

/// Generators of the elimination ideal: the basis elements free of the eliminated variables.
/// The basis must be lex with the eliminated variables ranked highest.
inline std::vector<MPoly> eliminate(const GroebnerBasis& g, VarSet eliminated) {
  if (g.order != MonomialOrder::Lex) fail(ErrorCode::Precondition, "elimination needs a lex basis");
  // eliminated variables must rank above every kept variable that occurs
  VarSet present = 0;
  for (const auto& b : g.basis)
    for (int v = 0; v < kNumVars; ++v)
      if (b.uses(static_cast<Var>(v))) present |= var_bit(static_cast<Var>(v));
  bool seen_kept = false;
  for (int v = 0; v < kNumVars; ++v) {
    if (!(present & var_bit(static_cast<Var>(v)))) continue;
    const bool elim = eliminated & var_bit(static_cast<Var>(v));
    if (elim && seen_kept) fail(ErrorCode::Precondition, "eliminated variables must be ranked highest");
    if (!elim) seen_kept = true;
  }
  std::vector<MPoly> out;
  for (const auto& b : g.basis)
    if (!uses_any(b, eliminated)) out.push_back(b);
  return out;
}

/// I : q^infinity as the reduced lex basis of (I + <1 - s*q>) with s eliminated.
inline GroebnerBasis saturate(const std::vector<MPoly>& ideal, const MPoly& q) {
  if (q.is_zero()) fail(ErrorCode::Precondition, "saturation by zero");
  for (const auto& p : ideal)
    if (p.uses(S)) fail(ErrorCode::Precondition, "the saturation variable s is reserved");
  std::vector<MPoly> gens = ideal;
  gens.push_back(MPoly(1) - mpoly::s() * q);
  GroebnerBasis full = buchberger(gens, MonomialOrder::Lex);
  GroebnerBasis out;
  out.order = MonomialOrder::Lex;
  out.basis = eliminate(full, var_bit(S));
  return out;
}

/// The basis element of least degree whose leading monomial is a pure power of t:
/// a monic relation P(t) with coefficients in the remaining variables.
inline std::optional<MPoly> monic_in_t_witness(const GroebnerBasis& g) {
  if (g.order != MonomialOrder::Lex) fail(ErrorCode::Precondition, "integrality witness needs a lex basis");
  std::optional<MPoly> best;
  int best_deg = 0;
  for (const auto& b : g.basis) {
    if (b.uses(S)) fail(ErrorCode::Precondition, "basis still contains the saturation variable");
    const Monomial lm = leading_monomial(b, g.order);
    if (lm[T] == 0 || lm[X] != 0 || lm[Y] != 0) continue;
    if (!best || lm[T] < best_deg) {
      best = b;
      best_deg = lm[T];
    }
  }
  return best;
}

/// Number of monomials in `vars` outside the leading-term ideal, or nullopt if infinite.
/// Other variables must not occur in the basis.
inline std::optional<long> count_standard_monomials(const GroebnerBasis& g, VarSet vars) {
  std::vector<Monomial> lms;
  for (const auto& b : g.basis) lms.push_back(leading_monomial(b, g.order));
  for (const auto& m : lms)
    if (mono::degree(m) == 0) return 0; // unit ideal
  std::vector<Var> vs;
  std::array<int, kNumVars> bound{};
  for (int v = 0; v < kNumVars; ++v) {
    if (!(vars & var_bit(static_cast<Var>(v)))) continue;
    vs.push_back(static_cast<Var>(v));
    int pure = -1;
    for (const auto& m : lms)
      if (m[v] > 0 && mono::degree(m) == m[v] && (pure < 0 || m[v] < pure)) pure = m[v];
    if (pure < 0) return std::nullopt;
    bound[static_cast<std::size_t>(v)] = pure;
  }
  long count = 0;
  Monomial cur{};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == vs.size()) {
      for (const auto& m : lms)
        if (mono::divides(m, cur)) return;
      ++count;
      return;
    }
    for (int e = 0; e < bound[vs[k]]; ++e) {
      cur[vs[k]] = static_cast<std::uint16_t>(e);
      self(self, k + 1);
    }
    cur[vs[k]] = 0;
  };
  rec(rec, 0);
  return count;
}

} // namespace rsnorm

#endif // RSNORM_GROEBNER_HPP
