#ifndef RSNORM_PROBE_HPP
#define RSNORM_PROBE_HPP

#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"

namespace rsnorm {

struct ProbeSchedule {
  Rational initial_radius{1, 16};
  Rational shrink{1, 4};
  int steps = 8;
};

enum class ProbeOutcome { Consistent, Violated, Inconclusive };

inline const char* probe_outcome_name(ProbeOutcome o) {
  switch (o) {
  case ProbeOutcome::Consistent: return "consistent";
  case ProbeOutcome::Violated: return "violated";
  case ProbeOutcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// A real curve point near the probed point and the enclosure of f there.
struct ProbeSample {
  Rational x;
  Interval y;
  Interval value;
};

struct ProbeResult {
  ProbeOutcome outcome = ProbeOutcome::Inconclusive;
  std::string point;
  int point_id = -1;
  Interval target;
  std::optional<ProbeSample> sample;
  int branches = 0;
};

namespace detail {

/// Enclosure of a tower element at a real point, refined to the given width.
inline Interval enclose_at(const NumberField& k, const RealEmbedding& emb, const NfElement& e, const Rational& width) {
  if (auto r = k.as_rational(k.reduce(e))) return Interval::point(*r);
  Box box(k, emb);
  for (int i = 0; i < 4096; ++i) {
    Interval iv = box.enclose(e);
    if (iv.width() <= width) return iv;
    box.refine();
  }
  return box.enclose(e);
}

struct BranchValue {
  ProbeSample sample;
  Rational distance;
};

inline std::vector<BranchValue> branch_values(const CurveFunction& f, const Rational& xs, const Interval& y0,
                                              const Rational& window, const Rational& width, const Interval& target) {
  std::vector<BranchValue> out;
  QPoly g = mpoly::to_upoly(mpoly::substitute(f.curve.F(), X, MPoly(xs)), Y);
  if (g.degree() <= 0) return out;
  g = qpoly::squarefree_part(g);
  for (auto iv : isolate_real_roots(g)) {
    if (iv.high < y0.lo - window || iv.low > y0.hi + window) continue;
    Rational w = width;
    Interval val;
    bool ok = false;
    for (int i = 0; i < 256 && !ok; ++i) {
      iv = refine_to(g, iv, w);
      std::array<Interval, kNumVars> at{Interval::point(0), Interval::point(0), Interval::point(xs), iv.closed()};
      Interval qv = mpoly::eval(f.q, at);
      if (!qv.contains_zero()) {
        val = mpoly::eval(f.p, at) / qv;
        ok = true;
      }
      w /= 2;
    }
    if (!ok) continue;
    const Interval y = iv.closed();
    const Rational mid = y.mid();
    if (abs(mid - y0.mid()) > window) continue;
    const Rational gap = std::max({Rational(0), Rational(val.lo - target.hi), Rational(target.lo - val.hi)});
    out.push_back({{xs, y, val}, gap});
  }
  return out;
}

} // namespace detail

/// Samples real curve points approaching a real bad point from both sides in x and checks
/// that the values of p/q tend to the assigned value. A falsifier, never a proof.
inline ProbeResult continuity_probe(const CurveFunction& f, const BadPoint& pt, const RealEmbedding& emb,
                                    const ProbeSchedule& sched = {}) {
  ProbeResult res;
  res.point = point_label(pt, emb);
  res.point_id = emb.id;
  auto vit = f.values.find(emb.id);
  if (vit == f.values.end()) fail(ErrorCode::Precondition, "probe needs an assigned value at " + res.point);

  Rational last = sched.initial_radius;
  for (int k = 1; k < sched.steps; ++k) last *= sched.shrink;
  const Rational fine = last * last;
  Interval x0, y0;
  at_embedding(pt.tower, emb, [&](const NumberField& k) {
    PointValues c = pt.coords(k);
    x0 = detail::enclose_at(k, emb, c.x, fine);
    y0 = detail::enclose_at(k, emb, c.y, fine);
    res.target = detail::enclose_at(k, emb, eval_at(k, vit->second, c), fine);
    return 0;
  });

  const int n = std::max(f.curve.F().degree(Y), 1);
  // per side: distances by step
  std::vector<std::vector<detail::BranchValue>> history[2];
  Rational delta = sched.initial_radius;
  for (int k = 0; k < sched.steps; ++k) {
    // branches through the point satisfy |y - y0| = O(delta^(1/n)); the window is
    // delta^(1/(n+1)) rounded up to a power of 1/2
    Rational window = 1;
    auto power = [n](Rational w) {
      Rational r = 1;
      for (int i = 0; i <= n; ++i) r *= w;
      return r;
    };
    while (power(window / 2) >= delta) window /= 2;
    for (int side = 0; side < 2; ++side) {
      const Rational xs = x0.mid() + (side == 0 ? -delta : delta);
      history[side].push_back(detail::branch_values(f, xs, y0, window, delta * delta, res.target));
    }
    delta *= sched.shrink;
  }

  bool any = false, converging = false;
  for (int side = 0; side < 2; ++side) {
    const auto& fin = history[side].back();
    const auto& mid = history[side][history[side].size() / 2];
    Rational mid_max = 0;
    for (const auto& b : mid) mid_max = std::max(mid_max, b.distance);
    for (const auto& b : fin) {
      any = true;
      ++res.branches;
      const bool separated = b.distance > b.sample.value.width() + res.target.width();
      if (separated && b.distance * 4 >= mid_max * 3) {
        res.outcome = ProbeOutcome::Violated;
        if (!res.sample) res.sample = b.sample;
      } else {
        converging = true;
      }
    }
  }
  if (res.outcome != ProbeOutcome::Violated) res.outcome = any && converging ? ProbeOutcome::Consistent : ProbeOutcome::Inconclusive;
  return res;
}

/// Probe at every real bad point.
inline std::vector<ProbeResult> continuity_probe_all(const CurveFunction& f, const ProbeSchedule& sched = {}) {
  std::vector<ProbeResult> out;
  for (const auto& b : f.bad)
    for (const auto& e : b.tower.real_embeddings()) out.push_back(continuity_probe(f, b, e, sched));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.point_id < b.point_id; });
  return out;
}

} // namespace rsnorm

#endif // RSNORM_PROBE_HPP
