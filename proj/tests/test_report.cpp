#include <gtest/gtest.h>

#include <random>

#include "rsnorm/rsnorm.hpp"

using namespace rsnorm;

namespace {

MPoly random_poly(std::mt19937& rng) {
  MPoly out;
  const int terms = static_cast<int>(rng() % 6);
  for (int i = 0; i < terms; ++i) {
    Monomial m{};
    for (Var v : {T, X, Y}) m[v] = static_cast<std::uint16_t>(rng() % 4);
    const long num = static_cast<long>(rng() % 41) - 20;
    const long den = static_cast<long>(rng() % 6) + 1;
    Rational c(num, den);
    c.canonicalize();
    out += MPoly::monomial(m, c);
  }
  return out;
}

ErrorCode parse_error(const char* text) {
  try {
    parse_poly(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

JobSpec job(const char* curve, const char* num, const char* den, const char* value) {
  JobSpec j;
  j.curve = curve;
  j.num = num;
  j.den = den;
  j.assignments.push_back({std::make_pair(std::string("0"), std::string("0")), std::nullopt, value});
  return j;
}

void expect_round_trip(const ReportDocument& d) {
  const std::string text = emit_machine(d);
  const ReportDocument back = parse_machine(text);
  EXPECT_EQ(back, d);
  EXPECT_EQ(emit_machine(back), text);
}

/// Every polynomial-valued field re-parses.
void expect_polys_parse(const ReportDocument& d) {
  const VarNames vars = graph_vars();
  EXPECT_NO_THROW(parse_poly(d.curve, vars));
  if (d.certificates && d.certificates->integral_relation) {
    EXPECT_NO_THROW(parse_poly(*d.certificates->integral_relation, vars));
  }
  for (const auto& f : d.fibers) {
    EXPECT_NO_THROW(parse_poly(f.fiber, vars));
    if (f.singleton) {
      EXPECT_NO_THROW(parse_poly(*f.singleton, vars));
    }
  }
}

} // namespace

TEST(Parser, Examples) {
  EXPECT_EQ(parse_poly("y^2 - x^3"), MPoly::var(Y, 2) - MPoly::var(X, 3));
  EXPECT_EQ(parse_poly("1/2*x + y"), MPoly(Rational(1, 2)) * mpoly::x() + mpoly::y());
  const MPoly x2 = MPoly::var(X, 2) + MPoly(1);
  EXPECT_EQ(parse_poly("y^2 - x^3*(x^2+1)^2"), MPoly::var(Y, 2) - MPoly::var(X, 3) * x2 * x2);
}

TEST(Parser, Errors) {
  EXPECT_EQ(parse_error("2x"), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("x y"), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("(x + y"), ErrorCode::Syntax);
  EXPECT_EQ(parse_error(""), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("x/y"), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("z + 1"), ErrorCode::UnknownVariable);
  EXPECT_EQ(parse_error("x^-1"), ErrorCode::NegativeExponent);
  try {
    parse_poly("x + $");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("position 5"), std::string::npos) << e.what();
  }
}

TEST(Parser, RoundTripsCanonicalText) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const MPoly p = random_poly(rng);
    const std::string text = mpoly::to_string(p);
    EXPECT_EQ(parse_poly(text, graph_vars()), p) << text;
    EXPECT_EQ(mpoly::to_string(parse_poly(text, graph_vars())), text);
  }
}

TEST(Report, CuspMachineText) {
  const std::string text = emit_machine(run_classify(job("y^2 - x^3", "y", "x", "0")));
  EXPECT_NE(text.find("\"integral_relation\": \"t^2 - x\""), std::string::npos);
  EXPECT_NE(text.find("\"k_plus\": \"yes\""), std::string::npos);
}

TEST(Report, QuarticFiberAtOrigin) {
  ReportDocument d = run_classify(job("y^4 - x*(x^2 + y^2)", "y^2", "x", "0"));
  ASSERT_FALSE(d.fibers.empty());
  EXPECT_EQ(d.fibers[0].point, "(0, 0)");
  EXPECT_EQ(d.fibers[0].distinct_real, 2);
}

TEST(Report, NonSquarefreeCurveIsAnInputError) {
  ReportDocument d = run_classify(job("(y - x)^2", "y", "x", "0"));
  ASSERT_TRUE(d.error);
  EXPECT_EQ(d.error->code, static_cast<int>(ErrorCode::NonSquarefree));
  EXPECT_NE(d.error->message.find("x - y"), std::string::npos);
  EXPECT_EQ(exit_code(d), 31);
}

TEST(Report, VerdictNoIsNotAnError) {
  ReportDocument d = run_classify(job("y^2 - x^2*(x + 1)", "y", "x", "1"));
  ASSERT_TRUE(d.verdicts);
  EXPECT_EQ(d.verdicts->k_r_plus, "no");
  EXPECT_EQ(exit_code(d), 0);
}

TEST(Report, IndexLocatorReachesIrrationalPoints) {
  JobSpec j;
  j.curve = "y^2 - x^2*(x + 1)";
  j.num = "y";
  j.den = "x^2 - 2";
  j.assignments = {{std::nullopt, 0, "y"}, {std::nullopt, 1, "0"}};
  ReportDocument d = run_classify(j);
  ASSERT_FALSE(d.error) << d.error->message;
  ASSERT_EQ(d.assignments.size(), 2U);
  EXPECT_EQ(d.assignments[0].value, "y");
  EXPECT_EQ(d.verdicts->integral, "no");
  j.assignments.push_back({std::nullopt, 2, "0"});
  d = run_classify(j);
  ASSERT_TRUE(d.error);
  EXPECT_EQ(d.error->code, static_cast<int>(ErrorCode::ExtraAssignment));
}

TEST(Report, DemoMatchesExpectedTable) {
  for (const auto& d : run_demo()) {
    ASSERT_TRUE(d.demo);
    EXPECT_TRUE(d.demo->passed) << d.demo->name << ": " << (d.demo->mismatches.empty() ? "" : d.demo->mismatches[0]);
  }
}

TEST(Report, EmitParseEmitIsByteIdentical) {
  for (const auto& d : run_demo(true)) {
    expect_round_trip(d);
    expect_polys_parse(d);
  }
  JobSpec p = job("y^2 - x^3*(x^2 + 1)^2", "y", "x*(x^2 + 1)", "0");
  p.command = Command::Present;
  p.timing = true;
  ReportDocument pd = run_classify(p);
  ASSERT_TRUE(pd.presentation);
  ASSERT_TRUE(pd.seconds);
  expect_round_trip(pd);
  JobSpec m;
  m.command = Command::CheckMorphism;
  m.curve = "y^2 - x^2*(x + 1)";
  m.map_u = "w^2 - 1";
  m.map_v = "w*(w^2 - 1)";
  m.map_p = "w";
  ReportDocument md = run_classify(m);
  ASSERT_TRUE(md.morphism);
  EXPECT_FALSE(md.morphism->constant);
  expect_round_trip(md);
  expect_round_trip(run_classify(job("(y - x)^2", "y", "x", "0")));
  const std::vector<ReportDocument> batch{pd, md};
  EXPECT_EQ(emit_machine(parse_machine_batch(emit_machine(batch))), emit_machine(batch));
}

TEST(Report, IdenticalJobsGiveIdenticalText) {
  const JobSpec j = job("y^2 - x^3*(x^2 + 1)^2", "y", "x*(x^2 + 1)", "0");
  EXPECT_EQ(emit_machine(run_classify(j)), emit_machine(run_classify(j)));
  EXPECT_EQ(emit_human(run_classify(j)), emit_human(run_classify(j)));
}

TEST(Report, MalformedReportIsRejected) {
  try {
    parse_machine("{\"command\": 3}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadJob);
  }
}

TEST(JobFile, ReadsLocatorsAndOptions) {
  auto objs = job_objects(R"({"jobs": [{"curve": "y^2 - x^3", "num": "y", "den": "x",
      "assignments": [{"at": [0, "0"], "value": 0}], "probe": true, "realness_budget": 8},
      {"command": "present", "curve": "y", "assignments": [{"index": 3, "value": "x"}]}]})");
  ASSERT_EQ(objs.size(), 2U);
  JobSpec a = job_from_json(objs[0]);
  EXPECT_TRUE(a.probe);
  EXPECT_EQ(a.realness_budget, 8);
  ASSERT_EQ(a.assignments.size(), 1U);
  EXPECT_EQ(a.assignments[0].at->first, "0");
  EXPECT_EQ(a.assignments[0].value, "0");
  JobSpec b = job_from_json(objs[1]);
  EXPECT_EQ(b.command, Command::Present);
  EXPECT_EQ(b.assignments[0].index, 3);
}

TEST(JobFile, Errors) {
  for (const char* text : {"{", R"({"command": "frobnicate"})", R"({"assignments": [{"at": ["0"], "value": "1"}]})",
                           R"({"assignments": [{"at": ["0", "0"], "index": 0, "value": "1"}]})"}) {
    try {
      for (const auto& j : job_objects(text)) job_from_json(j);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadJob) << text;
    }
  }
}
