#ifndef RSNORM_TOWER_EVAL_HPP
#define RSNORM_TOWER_EVAL_HPP

#include <map>
#include <vector>

#include "embedding.hpp"
#include "mpoly.hpp"

namespace rsnorm {

/// Values substituted for x and y inside a tower.
struct PointValues {
  NfElement x;
  NfElement y;
};

/// Coordinates of the closed point represented by a depth-2 tower: x = a, y = b.
inline PointValues tower_point(const NumberField& k) {
  if (k.depth() != 2) fail(ErrorCode::Internal, "point towers have depth 2");
  return {k.gen(1), k.gen(2)};
}

namespace detail {

class PowerCache {
 public:
  PowerCache(const NumberField& k, const NfElement& base) : k_(k) { powers_.push_back(k.one()), powers_.push_back(base); }
  const NfElement& get(unsigned e) {
    while (powers_.size() <= e) powers_.push_back(k_.mul(powers_.back(), powers_[1]));
    return powers_[e];
  }

 private:
  const NumberField& k_;
  std::vector<NfElement> powers_;
};

} // namespace detail

/// p(t, x, y) with x, y substituted: a polynomial in t over the tower. p must be free of s.
inline NfPoly specialize_t(const NumberField& k, const MPoly& p, const PointValues& at) {
  if (p.uses(S)) fail(ErrorCode::Internal, "cannot specialize a polynomial in s");
  detail::PowerCache xs(k, at.x), ys(k, at.y);
  std::map<unsigned, NfElement> by_t;
  for (const auto& term : p.terms()) {
    NfElement v = k.mul(k.mul(xs.get(term.m[X]), ys.get(term.m[Y])), k.from_rational(term.c));
    auto& slot = by_t[term.m[T]];
    slot = k.add(slot, v);
  }
  NfPoly r;
  for (const auto& [e, v] : by_t) {
    if (r.c.size() <= e) r.c.resize(e + 1U, k.zero());
    r.c[e] = v;
  }
  upoly::trim(k, r);
  return r;
}

/// p(x, y) evaluated in the tower.
inline NfElement eval_at(const NumberField& k, const MPoly& p, const PointValues& at) {
  if (p.uses(T)) fail(ErrorCode::Internal, "cannot evaluate a polynomial in t at a point");
  NfPoly r = specialize_t(k, p, at);
  return r.is_zero() ? k.zero() : r.c[0];
}

/// p(a, y) as a polynomial in y over a depth-1 tower (x = a).
inline NfPoly specialize_x(const NumberField& k, const MPoly& p) {
  if (p.uses(S) || p.uses(T)) fail(ErrorCode::Internal, "bivariate polynomial expected");
  detail::PowerCache xs(k, k.gen(1));
  std::map<unsigned, NfElement> by_y;
  for (const auto& term : p.terms()) {
    auto& slot = by_y[term.m[Y]];
    slot = k.add(slot, k.mul(xs.get(term.m[X]), k.from_rational(term.c)));
  }
  NfPoly r;
  for (const auto& [e, v] : by_y) {
    if (r.c.size() <= e) r.c.resize(e + 1U, k.zero());
    r.c[e] = v;
  }
  upoly::trim(k, r);
  return r;
}

} // namespace rsnorm

#endif // RSNORM_TOWER_EVAL_HPP
