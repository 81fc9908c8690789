#ifndef RSNORM_EMBEDDING_HPP
#define RSNORM_EMBEDDING_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "number_field.hpp"

namespace rsnorm {

/// Bisections tried before falling back to the exact zero test.
inline constexpr int kSignBisectionCap = 64;

using NfPoly = UPoly<NfElement>;

int sign_at(const NumberField& k, const NfElement& e, const RealEmbedding& emb);
int real_root_count(const NumberField& k, const NfPoly& f, const RealEmbedding& emb, const Bound& low,
                    const Bound& high);
NumberField branch_containing(const NumberField& k, const SplitEvent& ev, const RealEmbedding& emb);

/// Runs fn(k) for the real point emb, restricting k to the branch containing emb
/// whenever a zero divisor shows up. Never lets a SplitEvent escape.
template <class Fn>
auto at_embedding(NumberField k, const RealEmbedding& emb, Fn&& fn) -> std::invoke_result_t<Fn, const NumberField&> {
  for (;;) {
    try {
      return fn(static_cast<const NumberField&>(k));
    } catch (const SplitEvent& ev) {
      k = branch_containing(k, ev, emb);
    }
  }
}

namespace detail {

/// Shrinking enclosure of one real point of a tower.
class Box {
 public:
  Box(const NumberField& k, const RealEmbedding& emb) : k_(k), emb_(emb) {}

  Interval a() const { return a_exact_ ? Interval::point(*a_exact_) : emb_.a.closed(); }
  Interval b() const { return b_exact_ ? Interval::point(*b_exact_) : emb_.b->closed(); }

  Interval enclose(const NfElement& e) const {
    const Interval ia = a();
    if (k_.depth() < 2) return e.is_zero() ? Interval::point(0) : qpoly::eval(e.c[0], ia);
    const Interval ib = b();
    Interval acc = Interval::point(0);
    for (std::size_t i = e.c.size(); i-- > 0;) acc = acc * ib + qpoly::eval(e.c[i], ia);
    return acc;
  }

  void refine() {
    if (k_.depth() >= 1 && !a_exact_) {
      const Rational mid = emb_.a.mid_point();
      if (sign(qpoly::eval(k_.m1(), mid)) == 0) a_exact_ = mid;
      else emb_.a = rsnorm::refine(k_.m1(), emb_.a);
    }
    if (k_.depth() == 2 && !b_exact_) refine_b();
  }

 private:
  int m2_sign(const Rational& at) const {
    NumberField base = k_.base();
    NfElement v;
    for (std::size_t i = k_.m2().size(); i-- > 0;) {
      v = base.mul(v, base.from_rational(at));
      v = base.add(v, base.reduce({{k_.m2()[i]}}));
    }
    RealEmbedding e1 = emb_;
    e1.b.reset();
    return sign_at(base, v, e1);
  }

  void refine_b() {
    IsolatingInterval& ib = *emb_.b;
    if (!low_sign_) low_sign_ = m2_sign(ib.low);
    const Rational mid = (ib.low + ib.high) / 2;
    const int sm = m2_sign(mid);
    if (sm == 0) {
      b_exact_ = mid;
      return;
    }
    if (sm == *low_sign_) ib.low = mid;
    else ib.high = mid;
  }

  const NumberField& k_;
  RealEmbedding emb_;
  std::optional<Rational> a_exact_, b_exact_;
  std::optional<int> low_sign_;
};

inline bool zero_at(const NumberField& k, const NfElement& e, const RealEmbedding& emb) {
  return at_embedding(k, emb, [&](const NumberField& kk) {
    NfElement r = kk.reduce(e);
    if (r.is_zero()) return true;
    (void)kk.inv(r); // a zero divisor raises and restricts the field
    return false;
  });
}

/// Substitutes a linear level 2 (b = -m2[0]) to drop to the base field.
inline NfElement substitute_linear_b(const NumberField& k, const NfElement& e) {
  NumberField base = k.base();
  NfElement beta = base.neg(base.reduce({{k.m2()[0]}}));
  NfElement acc;
  for (std::size_t i = e.c.size(); i-- > 0;) acc = base.add(base.mul(acc, beta), base.reduce({{e.c[i]}}));
  return acc;
}

} // namespace detail

/// Exact sign of e at the real point emb.
inline int sign_at(const NumberField& k, const NfElement& e0, const RealEmbedding& emb) {
  NfElement e = k.reduce(e0);
  if (auto r = k.as_rational(e)) return sign(*r);
  if (k.depth() == 2 && k.degree2() == 1) return sign_at(k.base(), detail::substitute_linear_b(k, e), emb);
  if (k.depth() == 2 && e.c.size() == 1) {
    RealEmbedding e1 = emb;
    e1.b.reset();
    return sign_at(k.base(), e, e1);
  }
  detail::Box box(k, emb);
  for (int i = 0; i < kSignBisectionCap; ++i) {
    if (int s = box.enclose(e).strict_sign(); s != 0) return s;
    box.refine();
  }
  if (detail::zero_at(k, e, emb)) return 0;
  for (;;) {
    if (int s = box.enclose(e).strict_sign(); s != 0) return s;
    box.refine();
  }
}

namespace detail {

inline int poly_sign_at(const NumberField& k, const NfPoly& p, const Bound& at, bool at_low_end,
                        const RealEmbedding& emb) {
  if (p.is_zero()) return 0;
  if (at) return sign_at(k, upoly::eval(k, p, k.from_rational(*at)), emb);
  const int s = sign_at(k, p.lc(), emb);
  if (!at_low_end || p.degree() % 2 == 0) return s;
  return -s;
}

inline std::vector<NfPoly> sturm_sequence(const NumberField& k, const NfPoly& f) {
  std::vector<NfPoly> seq{f};
  NfPoly d = upoly::derivative(k, f);
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    NfPoly r = upoly::rem(k, seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(upoly::neg(k, r));
  }
  return seq;
}

inline int variations(const NumberField& k, const std::vector<NfPoly>& seq, const Bound& at, bool low_end,
                      const RealEmbedding& emb) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    const int s = poly_sign_at(k, p, at, low_end, emb);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

} // namespace detail

/// Distinct real roots in the open interval (low, high) of f (coefficients in k, squarefree over k)
/// specialized at the real point emb.
inline int real_root_count(const NumberField& k0, const NfPoly& f0, const RealEmbedding& emb, const Bound& low,
                           const Bound& high) {
  if (low && high && *low >= *high) return 0;
  return at_embedding(k0, emb, [&](const NumberField& k) {
    NfPoly f;
    for (const auto& coef : f0.c) f.c.push_back(k.reduce(coef));
    upoly::trim(k, f);
    if (f.is_zero()) fail(ErrorCode::Precondition, "real root count of the zero polynomial");
    auto seq = detail::sturm_sequence(k, f);
    int n = detail::variations(k, seq, low, true, emb) - detail::variations(k, seq, high, false, emb);
    if (high && detail::poly_sign_at(k, f, high, false, emb) == 0) --n;
    return n;
  });
}

/// Isolating intervals for the real roots of f (squarefree over k) at the real point emb.
inline std::vector<IsolatingInterval> isolate_real_roots_at(const NumberField& k0, const NfPoly& f0,
                                                            const RealEmbedding& emb) {
  return at_embedding(k0, emb, [&](const NumberField& k) {
    std::vector<IsolatingInterval> out;
    NfPoly f;
    for (const auto& coef : f0.c) f.c.push_back(k.reduce(coef));
    upoly::trim(k, f);
    if (f.degree() <= 0) return out;
    f = upoly::monic(k, f);
    // Cauchy bound from coefficient enclosures (f is monic)
    detail::Box box(k, emb);
    Rational m = 0;
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, box.enclose(f.c[static_cast<std::size_t>(i)]).magnitude());
    const Rational bound = m + 1;
    struct Pending {
      Rational lo, hi;
      int n;
    };
    std::vector<Pending> stack;
    const int total = real_root_count(k, f, emb, -bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
      Pending cur = stack.back();
      stack.pop_back();
      if (cur.n == 1) {
        out.push_back({cur.lo, cur.hi});
        continue;
      }
      Rational mid = (cur.lo + cur.hi) / 2;
      while (detail::poly_sign_at(k, f, mid, false, emb) == 0) mid = (cur.lo + mid) / 2;
      const int left = real_root_count(k, f, emb, cur.lo, mid);
      if (cur.n - left > 0) stack.push_back({mid, cur.hi, cur.n - left});
      if (left > 0) stack.push_back({cur.lo, mid, left});
    }
    std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) { return u.low < v.low; });
    return out;
  });
}

/// Computes the real points of a tower of depth 1 or 2 (ids left unassigned).
inline std::vector<RealEmbedding> compute_real_embeddings(const NumberField& k) {
  std::vector<RealEmbedding> out;
  if (k.depth() == 0) return out;
  for (const auto& ia : isolate_real_roots(k.m1())) {
    RealEmbedding e1;
    e1.a = ia;
    if (k.depth() == 1) {
      out.push_back(e1);
      continue;
    }
    NumberField base = k.base();
    for (const auto& ib : isolate_real_roots_at(base, k.lift_b_m2(), e1)) {
      RealEmbedding e2 = e1;
      e2.b = ib;
      out.push_back(e2);
    }
  }
  return out;
}

inline NumberField with_real_embeddings(NumberField k) {
  k.set_real_embeddings(compute_real_embeddings(k));
  return k;
}

namespace detail {

inline bool embedding_in_first(const NumberField& k, const SplitEvent& ev, const RealEmbedding& emb) {
  if (ev.level == 1) return sturm_count(upoly::monic(qpoly::kQ, ev.factor1), emb.a.low, emb.a.high) == 1;
  NumberField base = k.base();
  NfPoly g;
  for (const auto& coef : ev.factor2) g.c.push_back(base.reduce({{coef}}));
  upoly::trim(base, g);
  RealEmbedding e1 = emb;
  e1.b.reset();
  return real_root_count(base, g, e1, emb.b->low, emb.b->high) == 1;
}

} // namespace detail

inline NumberField branch_containing(const NumberField& k, const SplitEvent& ev, const RealEmbedding& emb) {
  auto [f1, f2] = k.split_minpolys(ev);
  return detail::embedding_in_first(k, ev, emb) ? f1 : f2;
}

/// Splits a tower along ev and distributes its real points to the two branches.
inline std::pair<NumberField, NumberField> split(const NumberField& k, const SplitEvent& ev) {
  auto [f1, f2] = k.split_minpolys(ev);
  std::vector<RealEmbedding> r1, r2;
  for (const auto& emb : k.real_embeddings()) (detail::embedding_in_first(k, ev, emb) ? r1 : r2).push_back(emb);
  f1.set_real_embeddings(std::move(r1));
  f2.set_real_embeddings(std::move(r2));
  return {f1, f2};
}

/// Dynamic evaluation: runs fn on k, splitting and re-running on each branch whenever
/// a zero divisor is met. Branches come back in a deterministic order.
template <class Fn>
auto over_branches(const NumberField& k, Fn&& fn)
    -> std::vector<std::pair<NumberField, std::invoke_result_t<Fn, const NumberField&>>> {
  using R = std::invoke_result_t<Fn, const NumberField&>;
  std::vector<std::pair<NumberField, R>> out;
  std::vector<NumberField> work{k};
  while (!work.empty()) {
    NumberField cur = std::move(work.back());
    work.pop_back();
    try {
      R r = fn(static_cast<const NumberField&>(cur));
      out.emplace_back(std::move(cur), std::move(r));
    } catch (const SplitEvent& ev) {
      auto [f1, f2] = split(cur, ev);
      work.push_back(std::move(f2));
      work.push_back(std::move(f1));
    }
  }
  return out;
}

/// Exact decimal approximation of the real point's coordinates.
inline std::pair<Rational, Rational> approximate(const NumberField& k, const RealEmbedding& emb,
                                                 const Rational& width) {
  Rational ax = 0, by = 0;
  if (k.depth() >= 1) ax = refine_to(k.m1(), emb.a, width).mid_point();
  if (k.depth() == 2 && emb.b) {
    detail::Box box(k, emb);
    while (box.b().width() > width) box.refine();
    by = box.b().mid();
  }
  return {ax, by};
}

} // namespace rsnorm

#endif // RSNORM_EMBEDDING_HPP
