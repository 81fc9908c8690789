#include <gtest/gtest.h>

#include "rsnorm/morphism.hpp"
#include "rsnorm/parse.hpp"
#include "rsnorm/probe.hpp"

using namespace rsnorm;

namespace {

MPoly Pxy(const char* text) { return parse_poly(text); }
MPoly Pw(const char* text) { return parse_poly(text, VarNames{{"w", T}}); }

CurveFunction fn(const char* curve, const char* p, const char* q, const char* value) {
  PlaneCurve c = with_certified_realness(make_curve(Pxy(curve)), 64);
  return make_function(c, Pxy(p), Pxy(q), {{{std::make_pair(Rational(0), Rational(0)), std::nullopt}, Pxy(value)}});
}

ProbeOutcome probe_origin(const CurveFunction& f) {
  auto all = continuity_probe_all(f);
  EXPECT_EQ(all.size(), 1U);
  return all.empty() ? ProbeOutcome::Inconclusive : all[0].outcome;
}

} // namespace

TEST(ContinuityProbe, Examples) {
  EXPECT_EQ(probe_origin(fn("y^2 - x^3", "y", "x", "0")), ProbeOutcome::Consistent);
  EXPECT_EQ(probe_origin(fn("y^2 - x^2*(x+1)", "y", "x", "1")), ProbeOutcome::Violated);
  EXPECT_EQ(probe_origin(fn("y^4 - x*(x^2+y^2)", "y^2", "x", "0")), ProbeOutcome::Violated);
  EXPECT_EQ(probe_origin(fn("y^2 - x^3*(x^2+1)^2", "y", "x*(x^2+1)", "0")), ProbeOutcome::Consistent);
  // the wrong value at the cusp is caught as well
  EXPECT_EQ(probe_origin(fn("y^2 - x^3", "y", "x", "1/2")), ProbeOutcome::Violated);
}

TEST(ContinuityProbe, ViolationSampleIsNearTheOtherBranch) {
  auto all = continuity_probe_all(fn("y^2 - x^2*(x+1)", "y", "x", "1"));
  ASSERT_EQ(all.size(), 1U);
  ASSERT_TRUE(all[0].sample);
  // oracle: t^2 = x + 1, the bad branch has t near -1
  EXPECT_LT(abs(all[0].sample->value.mid() + 1), Rational(1, 100));
}

TEST(FiberConstancy, Examples) {
  PlaneCurve cusp = make_curve(Pxy("y^2 - x^3"));
  auto r1 = fiber_constancy_check(make_morphism(Pw("w^2"), Pw("w^3"), cusp), Pw("w"));
  EXPECT_TRUE(r1.constant);

  PlaneCurve twisted = make_curve(Pxy("y^2 - x^3*(x^2+1)^2"));
  auto r2 = fiber_constancy_check(make_morphism(Pw("w^2"), Pw("w^3*(w^4+1)"), twisted), Pw("w"));
  EXPECT_TRUE(r2.constant);

  PlaneCurve node = make_curve(Pxy("y^2 - x^2*(x+1)"));
  auto r3 = fiber_constancy_check(make_morphism(Pw("w^2 - 1"), Pw("w*(w^2 - 1)"), node), Pw("w"));
  EXPECT_FALSE(r3.constant);
  ASSERT_EQ(r3.witnesses.size(), 1U);
  EXPECT_EQ(r3.witnesses[0].point, "(0, 0)");
  EXPECT_EQ(r3.witnesses[0].fiber_size, 2);
  // p = w^2 is constant on every fiber
  EXPECT_TRUE(fiber_constancy_check(make_morphism(Pw("w^2 - 1"), Pw("w*(w^2 - 1)"), node), Pw("w^2")).constant);
}

TEST(FiberConstancy, Errors) {
  PlaneCurve cusp = make_curve(Pxy("y^2 - x^3"));
  try {
    make_morphism(Pw("w"), Pw("w"), cusp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOnCurve);
  }
  PlaneCurve line = make_curve(Pxy("y"));
  try {
    fiber_constancy_check(make_morphism(Pw("0"), Pw("0"), line), Pw("w"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}
