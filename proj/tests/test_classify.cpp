#include <gtest/gtest.h>

#include "rsnorm/classify.hpp"
#include "rsnorm/parse.hpp"

using namespace rsnorm;

namespace {

MPoly Pxy(const char* text) { return parse_poly(text); }
MPoly Ptxy(const char* text) { return parse_poly(text, graph_vars()); }

ValueAssignment at_origin(const char* value) { return {{std::make_pair(Rational(0), Rational(0)), std::nullopt}, Pxy(value)}; }

CurveFunction fn(const char* curve, const char* p, const char* q, std::vector<ValueAssignment> values) {
  PlaneCurve c = with_certified_realness(make_curve(Pxy(curve)), 64);
  return make_function(c, Pxy(p), Pxy(q), values);
}

const char* kCusp = "y^2 - x^3";
const char* kTwisted = "y^2 - x^3*(x^2+1)^2";
const char* kQuartic = "y^4 - x*(x^2+y^2)";
const char* kCubic = "y^3 - x^2*y^2 + y*x^2*(x+1) - x^4*(x+1)";
const char* kNode = "y^2 - x^2*(x+1)";

std::string verdict_row(const ClassificationReport& r) {
  return std::string(verdict_name(r.verdicts.regular)) + " " + verdict_name(r.verdicts.k_plus) + " " +
         verdict_name(r.verdicts.k_r_plus) + " " + verdict_name(r.verdicts.integral);
}

} // namespace

TEST(MakeFunction, Validation) {
  EXPECT_NO_THROW(fn(kCusp, "y", "x", {at_origin("0")}));
  EXPECT_NO_THROW(fn(kNode, "y", "x", {at_origin("1")}));
  try {
    fn(kCusp, "y", "x", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingAssignment);
    EXPECT_EQ(std::string(e.what()), "missing value at (0, 0)");
  }
  try {
    fn(kCusp, "y", "x", {at_origin("0"), at_origin("1")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateAssignment);
  }
  try {
    fn(kCusp, "y", "x", {at_origin("0"), {{std::make_pair(Rational(1), Rational(1)), std::nullopt}, Pxy("0")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExtraAssignment);
  }
  try {
    fn("x*(y - 1)", "1", "x*y", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDivisor);
  }
  // index locator
  EXPECT_NO_THROW(fn(kCusp, "y", "x", {{{std::nullopt, 0}, Pxy("0")}}));
}

TEST(GraphIdeal, Examples) {
  auto cusp = graph_ideal(fn(kCusp, "y", "x", {at_origin("0")}));
  for (const char* r : {"y^2 - x^3", "x*t - y", "t^2 - x", "t*y - x^2"}) EXPECT_TRUE(ideal_contains(cusp.gb_lex, Ptxy(r))) << r;
  EXPECT_TRUE(ideal_contains(graph_ideal(fn(kTwisted, "y", "x*(x^2+1)", {at_origin("0")})).gb_lex, Ptxy("t^2 - x")));
  EXPECT_TRUE(ideal_contains(graph_ideal(fn(kQuartic, "y^2", "x", {at_origin("0")})).gb_lex, Ptxy("t^2 - t - x")));
}

TEST(IsRegular, Examples) {
  auto f1 = fn(kCusp, "x*y", "x", {at_origin("0")});
  auto r1 = is_regular(f1, graph_ideal(f1));
  EXPECT_TRUE(r1.yes);
  ASSERT_TRUE(r1.h);
  EXPECT_EQ(*r1.h, Pxy("y"));

  auto f2 = fn(kCusp, "y", "x", {at_origin("0")});
  auto r2 = is_regular(f2, graph_ideal(f2));
  EXPECT_FALSE(r2.yes);
  ASSERT_TRUE(r2.obstruction);
  EXPECT_EQ(*r2.obstruction, Pxy("y"));

  auto f3 = fn(kCusp, "x*y", "x", {at_origin("5")});
  auto r3 = is_regular(f3, graph_ideal(f3));
  EXPECT_FALSE(r3.yes);
  EXPECT_EQ(r3.mismatch, "(0, 0)");
}

TEST(IsIntegral, Examples) {
  EXPECT_EQ(*integral_relation(graph_ideal(fn(kCusp, "y", "x", {at_origin("0")}))), Ptxy("t^2 - x"));
  EXPECT_EQ(*integral_relation(graph_ideal(fn(kQuartic, "y^2", "x", {at_origin("0")}))), Ptxy("t^2 - t - x"));
  EXPECT_EQ(*integral_relation(graph_ideal(fn(kCubic, "y", "x", {at_origin("0")}))),
            Ptxy("t^3 - x*t^2 + t*(x+1) - x*(x+1)"));
  // oracle: 1/x on the line y = 0 has an empty fiber over x = 0
  GraphIdeal inv{{}, saturate({Ptxy("y"), Ptxy("x*t - 1")}, Ptxy("x"))};
  EXPECT_FALSE(integral_relation(inv));
}

TEST(FiberReport, Examples) {
  auto cusp = fn(kCusp, "y", "x", {at_origin("0")});
  auto fc = fiber_reports(cusp, graph_ideal(cusp));
  ASSERT_EQ(fc.size(), 1U);
  EXPECT_EQ(fiber_text(fc[0]), "t");
  EXPECT_EQ(fc[0].distinct_complex, 1);
  EXPECT_TRUE(fc[0].singleton && fc[0].singleton->is_zero());
  EXPECT_EQ(fc[0].matches, true);

  auto twisted = fn(kTwisted, "y", "x*(x^2+1)", {at_origin("0")});
  auto f2 = fiber_reports(twisted, graph_ideal(twisted));
  ASSERT_EQ(f2.size(), 2U);
  EXPECT_FALSE(f2[1].real);
  EXPECT_EQ(f2[1].point, "{x^2 + 1 = 0, y = 0}");
  EXPECT_EQ(fiber_text(f2[1]), "t^2 - x");
  EXPECT_EQ(f2[1].distinct_complex, 2);

  auto cubic = fn(kCubic, "y", "x", {at_origin("0")});
  auto f3 = fiber_reports(cubic, graph_ideal(cubic));
  ASSERT_EQ(f3.size(), 1U);
  EXPECT_EQ(fiber_text(f3[0]), "t^3 + t");
  EXPECT_EQ(f3[0].distinct_complex, 3);
  EXPECT_EQ(f3[0].distinct_real, 1);
  EXPECT_FALSE(f3[0].singleton);
}

TEST(Classify, WorkedExamples) {
  EXPECT_EQ(verdict_row(classify(fn(kCusp, "y", "x", {at_origin("0")}))), "no yes yes yes");
  EXPECT_EQ(verdict_row(classify(fn(kTwisted, "y", "x*(x^2+1)", {at_origin("0")}))), "no no yes yes");
  auto quartic = classify(fn(kQuartic, "y^2", "x", {at_origin("0")}));
  EXPECT_EQ(verdict_row(quartic), "no no no yes");
  ASSERT_FALSE(quartic.fibers.empty());
  EXPECT_EQ(quartic.fibers[0].distinct_real, 2);
  EXPECT_EQ(fiber_text(quartic.fibers[0]), "t^2 - t");
  bool cond3 = false;
  for (const auto& w : quartic.failures) cond3 |= w.condition == 3;
  EXPECT_TRUE(cond3);

  auto cubic = classify(fn(kCubic, "y", "x", {at_origin("0")}));
  EXPECT_EQ(verdict_row(cubic), "no no no yes");
  for (const auto& w : cubic.failures) EXPECT_EQ(w.condition, 4);

  EXPECT_EQ(verdict_row(classify(fn(kNode, "y", "x", {at_origin("1")}))), "no no no yes");
  EXPECT_EQ(verdict_row(classify(fn(kCusp, "x^2 + y", "1", {}))), "yes yes yes yes");
}

TEST(Classify, RealnessCaveat) {
  PlaneCurve c = with_certified_realness(make_curve(Pxy("y^2 + x^2 + 1")), 16);
  auto r = classify(make_function(c, Pxy("1"), Pxy("x"), {}));
  EXPECT_EQ(r.verdicts.k_r_plus, Verdict::Unverified);
  EXPECT_FALSE(r.caveats.empty());
}

TEST(VerifyRSubintegral, Examples) {
  auto cusp = verify_r_subintegral(fn(kCusp, "y", "x", {at_origin("0")}));
  EXPECT_TRUE(cusp.r_subintegral && cusp.subintegral);
  auto twisted = verify_r_subintegral(fn(kTwisted, "y", "x*(x^2+1)", {at_origin("0")}));
  EXPECT_TRUE(twisted.r_subintegral);
  EXPECT_FALSE(twisted.subintegral);
  auto node = verify_r_subintegral(fn(kNode, "y", "x", {at_origin("1")}));
  EXPECT_FALSE(node.r_subintegral);
  ASSERT_FALSE(node.witnesses.empty());
}

TEST(PresentExtension, Examples) {
  auto cusp = fn(kCusp, "y", "x", {at_origin("0")});
  auto pr = present_extension(cusp, graph_ideal(cusp));
  GroebnerBasis expect = buchberger({Ptxy("y^2 - x^3"), Ptxy("x*t - y"), Ptxy("t^2 - x"), Ptxy("t*y - x^2")}, MonomialOrder::Lex);
  EXPECT_EQ(pr.relations, expect.basis);
  auto quartic = fn(kQuartic, "y^2", "x", {at_origin("0")});
  EXPECT_EQ(present_extension(quartic, graph_ideal(quartic)).integral_relation, Ptxy("t^2 - t - x"));
  auto line = with_certified_realness(make_curve(Pxy("y")), 8);
  auto inv = make_function(line, Pxy("1"), Pxy("x"), {at_origin("0")});
  try {
    present_extension(inv, graph_ideal(inv));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegral);
  }
}
