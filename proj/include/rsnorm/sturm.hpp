#ifndef RSNORM_STURM_HPP
#define RSNORM_STURM_HPP

#include <optional>
#include <vector>

#include "qpoly.hpp"

namespace rsnorm {

/// Open interval (low, high) holding exactly one real root of its polynomial.
/// Endpoints are never roots, so the polynomial changes sign across it.
struct IsolatingInterval {
  Rational low;
  Rational high;
  Interval closed() const { return {low, high}; }
  Rational mid_point() const { return (low + high) / 2; }
  friend bool operator==(const IsolatingInterval&, const IsolatingInterval&) = default;
};

/// Interval endpoint; nullopt stands for -infinity (low) or +infinity (high).
using Bound = std::optional<Rational>;

namespace sturm {

/// Pseudo-remainder over Z[x]: lc(b)^(deg a - deg b + 1) * a = q*b + r.
inline QPoly prem(const QPoly& a, const QPoly& b) {
  QPoly r = a;
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "pseudo-remainder by zero");
  const int db = b.degree();
  int steps = r.degree() - db + 1;
  if (steps <= 0) return r;
  const Rational& lb = b.lc();
  while (!r.is_zero() && r.degree() >= db) {
    const Rational lr = r.lc();
    const int shift = r.degree() - db;
    for (auto& v : r.c) v *= lb;
    for (int i = 0; i <= db; ++i) r.c[static_cast<std::size_t>(i + shift)] -= lr * b.c[static_cast<std::size_t>(i)];
    r.c.pop_back();
    upoly::trim(qpoly::kQ, r);
    --steps;
  }
  if (steps > 0) {
    Rational f = 1;
    for (int i = 0; i < steps; ++i) f *= lb;
    r = upoly::scale(qpoly::kQ, r, f);
  }
  return r;
}

/// Sturm sequence with primitive pseudo-remainders; every element is a positive multiple
/// of the corresponding classical signed remainder.
inline std::vector<QPoly> sequence(const QPoly& p) {
  std::vector<QPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(qpoly::positive_primitive(p));
  QPoly d = upoly::derivative(qpoly::kQ, p);
  if (d.is_zero()) return seq;
  seq.push_back(qpoly::positive_primitive(d));
  while (true) {
    const QPoly& a = seq[seq.size() - 2];
    const QPoly& b = seq.back();
    QPoly r = prem(a, b);
    if (r.is_zero()) break;
    const int delta = a.degree() - b.degree() + 1;
    // prem multiplies by lc(b)^delta; flip when that factor is negative
    bool negative_factor = sign(b.lc()) < 0 && (delta % 2 == 1);
    QPoly next = qpoly::positive_primitive(r);
    if (!negative_factor) next = upoly::neg(qpoly::kQ, next);
    seq.push_back(std::move(next));
  }
  return seq;
}

inline int sign_at(const QPoly& p, const Bound& at, bool at_low_end) {
  if (at) return sign(qpoly::eval(p, *at));
  if (p.is_zero()) return 0;
  const int s = sign(p.lc());
  if (!at_low_end) return s;
  return p.degree() % 2 == 0 ? s : -s;
}

inline int variations(const std::vector<QPoly>& seq, const Bound& at, bool at_low_end) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sign_at(p, at, at_low_end);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline bool is_squarefree(const QPoly& p) {
  if (p.degree() <= 0) return true;
  return upoly::gcd(qpoly::kQ, p, upoly::derivative(qpoly::kQ, p)).degree() == 0;
}

inline int count_with_sequence(const std::vector<QPoly>& seq, const Bound& low, const Bound& high) {
  if (seq.empty()) return 0;
  if (low && high && *low >= *high) return 0;
  int n = variations(seq, low, true) - variations(seq, high, false);
  if (high && sign(qpoly::eval(seq.front(), *high)) == 0) --n;
  return n;
}

} // namespace sturm

/// Exact number of distinct real roots of a squarefree rational polynomial in the open interval (low, high).
inline int sturm_count(const QPoly& p, const Bound& low = std::nullopt, const Bound& high = std::nullopt) {
  if (p.is_zero()) fail(ErrorCode::Precondition, "sturm_count of the zero polynomial");
  if (!sturm::is_squarefree(p)) fail(ErrorCode::Precondition, "sturm_count requires a squarefree polynomial");
  return sturm::count_with_sequence(sturm::sequence(p), low, high);
}

/// Halves an isolating interval of a squarefree p, keeping the invariants.
inline IsolatingInterval refine(const QPoly& p, const IsolatingInterval& iv) {
  const Rational mid = (iv.low + iv.high) / 2;
  const int sm = sign(qpoly::eval(p, mid));
  if (sm == 0) {
    const Rational q = (iv.high - iv.low) / 4;
    return {mid - q, mid + q};
  }
  if (sm == sign(qpoly::eval(p, iv.low))) return {mid, iv.high};
  return {iv.low, mid};
}

/// Refines until the width is at most max_width.
inline IsolatingInterval refine_to(const QPoly& p, IsolatingInterval iv, const Rational& max_width) {
  while (iv.high - iv.low > max_width) iv = refine(p, iv);
  return iv;
}

/// Disjoint isolating intervals, one per distinct real root, sorted ascending.
inline std::vector<IsolatingInterval> isolate_real_roots(const QPoly& a) {
  if (a.is_zero()) fail(ErrorCode::Precondition, "isolate_real_roots of the zero polynomial");
  std::vector<IsolatingInterval> out;
  if (a.degree() == 0) return out;
  const QPoly p = qpoly::squarefree_part(a);
  const auto seq = sturm::sequence(p);
  const Rational bound = qpoly::root_bound(p);
  struct Pending {
    Rational lo, hi;
    int n;
  };
  std::vector<Pending> stack;
  const int total = sturm::count_with_sequence(seq, -bound, bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.n == 1) {
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    Rational mid = (cur.lo + cur.hi) / 2;
    // split points must not be roots
    while (sign(qpoly::eval(p, mid)) == 0) mid = (cur.lo + mid) / 2;
    const int left = sturm::count_with_sequence(seq, cur.lo, mid);
    const int right = cur.n - left;
    // push right first so the left half is processed first
    if (right > 0) stack.push_back({mid, cur.hi, right});
    if (left > 0) stack.push_back({cur.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) { return u.low < v.low; });
  return out;
}

/// Rational roots of a, found among the real roots by the fact that lc * root is an integer
/// for a primitive integer polynomial.
inline std::vector<Rational> rational_roots(const QPoly& a) {
  std::vector<Rational> roots;
  if (a.degree() <= 0) return roots;
  const QPoly p = qpoly::primitive(qpoly::squarefree_part(a));
  const Rational lead = p.lc();
  for (auto iv : isolate_real_roots(p)) {
    iv = refine_to(p, iv, Rational(1, 2) / lead);
    // lead * root lies in (lead*low, lead*high), an interval of width <= 1/2
    Rational lo = lead * iv.low;
    Integer k = lo.get_num() / lo.get_den(); // truncation
    for (Integer cand = k - 1; cand <= k + 2; ++cand) {
      Rational r(cand, lead.get_num());
      r.canonicalize();
      if (r > iv.low && r < iv.high && sign(qpoly::eval(p, r)) == 0) {
        roots.push_back(r);
        break;
      }
    }
  }
  return roots;
}

} // namespace rsnorm

#endif // RSNORM_STURM_HPP
