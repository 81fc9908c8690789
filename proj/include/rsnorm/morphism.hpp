#ifndef RSNORM_MORPHISM_HPP
#define RSNORM_MORPHISM_HPP

#include <string>
#include <vector>

#include "classify.hpp"

namespace rsnorm {

/// w -> (u(w), v(w)) from the affine line onto a plane curve. The parameter w is stored
/// as the variable t.
struct PresentedMorphism {
  MPoly u, v;
  PlaneCurve target;
};

inline PresentedMorphism make_morphism(const MPoly& u, const MPoly& v, const PlaneCurve& target) {
  for (const auto* e : {&u, &v})
    if (e->uses(S) || e->uses(X) || e->uses(Y)) fail(ErrorCode::Precondition, "the map is given by polynomials in w");
  MPoly image = mpoly::substitute(mpoly::substitute(target.F(), X, u), Y, v);
  if (!image.is_zero()) fail(ErrorCode::NotOnCurve, "the map does not land in the target curve");
  return {u, v, target};
}

struct FiberWitness {
  std::string point;
  int fiber_size = 0;
  std::string residue; // p reduced modulo the fiber polynomial
  friend bool operator==(const FiberWitness&, const FiberWitness&) = default;
};

struct ConstancyResult {
  bool constant = true;
  std::vector<std::string> checked_points;
  std::vector<FiberWitness> witnesses;
};

namespace detail {

/// (a(s) - a(t)) / (s - t).
inline MPoly divided_difference(const MPoly& a) {
  MPoly out;
  for (const auto& term : a.terms()) {
    const unsigned e = term.m[T];
    for (unsigned i = 0; i < e; ++i) out += MPoly(term.c) * MPoly::var(S, i) * MPoly::var(T, e - 1 - i);
  }
  return out;
}

} // namespace detail

/// Checks that p (a polynomial in w) is constant on the fiber over every real point of the
/// target where the map is not injective.
inline ConstancyResult fiber_constancy_check(const PresentedMorphism& m, const MPoly& p) {
  if (p.uses(S) || p.uses(X) || p.uses(Y)) fail(ErrorCode::Precondition, "p is a polynomial in w");
  const MPoly gx = mpoly::x() - m.u, gy = mpoly::y() - m.v;
  GroebnerBasis map_ideal = buchberger({gx, gy}, MonomialOrder::Lex);
  if (!monic_in_t_witness(map_ideal)) fail(ErrorCode::NonFinite, "the map is not finite over the target");

  // pairs s != t with equal images, pushed down to the target
  const MPoly sx = mpoly::swap_vars(gx, S, T), sy = mpoly::swap_vars(gy, S, T);
  GroebnerBasis pairs = buchberger({detail::divided_difference(m.u), detail::divided_difference(m.v), gx, gy, sx, sy},
                                   MonomialOrder::Lex);
  std::vector<MPoly> locus = eliminate(pairs, var_bit(S) | var_bit(T));
  ConstancyResult res;
  if (locus.empty()) return res;
  bool unit = false;
  for (const auto& g : locus) unit |= g.is_constant();
  if (unit) return res;

  for (const auto& pt : triangular_decompose(m.target.F(), locus)) {
    for (const auto& emb : pt.tower.real_embeddings()) {
      FiberWitness w = at_embedding(pt.tower, emb, [&](const NumberField& k) {
        const PointValues at = pt.coords(k);
        NfPoly fu = specialize_t(k, gx, at), fv = specialize_t(k, gy, at);
        NfPoly g = fu.is_zero() ? fv : fv.is_zero() ? fu : upoly::gcd(k, fu, fv);
        g = upoly::monic(k, upoly::squarefree_part(k, g));
        NfPoly r = upoly::rem(k, specialize_t(k, p, at), g);
        BadPoint b{k, pt.y_first};
        return FiberWitness{point_label(pt, emb), g.degree(), r.degree() <= 0 ? "" : mpoly::to_string(fiber_to_mpoly(b, r))};
      });
      res.checked_points.push_back(w.point);
      if (!w.residue.empty()) {
        res.constant = false;
        res.witnesses.push_back(std::move(w));
      }
    }
  }
  return res;
}

} // namespace rsnorm

#endif // RSNORM_MORPHISM_HPP
