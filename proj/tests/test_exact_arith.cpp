#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <random>

#include "oracles.hpp"
#include "rsnorm/embedding.hpp"

using namespace rsnorm;
using rsnorm::test::P;

namespace {

const QField kQ;

}

TEST(UpolyGcd, SharedLinearFactor) { EXPECT_EQ(qpoly::gcd(P({-1, 0, 1}), P({-1, 1})), P({-1, 1})); }

TEST(UpolyGcd, Coprime) { EXPECT_EQ(qpoly::gcd(P({1, 0, 1}), P({0, 1})), P({1})); }

TEST(UpolyGcd, AgreesWithRationalRootFactorization) {
  const QPoly a = P({0, -1, 0, 1}), b = P({1, -2, 1});
  EXPECT_EQ(qpoly::gcd(a, b), test::common_linear_factors(a, b));
  EXPECT_EQ(qpoly::gcd(a, b), P({-1, 1}));
}

TEST(UpolyGcd, BothZeroIsDegenerate) {
  try {
    qpoly::gcd(QPoly{}, QPoly{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(UpolyGcd, DividesInputsOnRandomPairs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly common = test::random_poly(rng, 2, 3);
    QPoly a = upoly::mul(kQ, common, test::random_poly(rng, 3, 4));
    QPoly b = upoly::mul(kQ, common, test::random_poly(rng, 3, 4));
    if (a.is_zero() || b.is_zero()) continue;
    QPoly g = qpoly::gcd(a, b);
    EXPECT_TRUE(upoly::rem(kQ, a, g).is_zero());
    EXPECT_TRUE(upoly::rem(kQ, b, g).is_zero());
    if (!common.is_zero()) {
      EXPECT_TRUE(upoly::rem(kQ, g, common).is_zero());
    }
    EXPECT_EQ(g.lc(), 1);
  }
}

TEST(SquarefreePart, Examples) {
  EXPECT_EQ(qpoly::squarefree_part(P({0, 0, 1})), P({0, 1}));
  EXPECT_EQ(qpoly::squarefree_part(P({2, -3, 0, 1})), P({-2, 1, 1}));
}

TEST(SquarefreePart, OverGaussianRationalsAlreadySquarefree) {
  const NumberField k = NumberField::level1(P({1, 0, 1}), "i");
  NfPoly f({k.neg(k.gen(1)), k.zero(), k.one()});
  NfPoly s = upoly::squarefree_part(k, f);
  EXPECT_EQ(s, f);
  EXPECT_EQ(upoly::count_distinct_complex_roots(k, f), 2);
}

TEST(SquarefreePart, ZeroIsDegenerate) { EXPECT_THROW(qpoly::squarefree_part(QPoly{}), Error); }

TEST(SquarefreePart, Idempotent) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = upoly::mul(kQ, upoly::pow(kQ, test::random_poly(rng, 2, 3), 2), test::random_poly(rng, 3, 3));
    if (a.is_zero()) continue;
    QPoly s = qpoly::squarefree_part(a);
    EXPECT_EQ(qpoly::squarefree_part(s), s);
    EXPECT_TRUE(sturm::is_squarefree(s));
  }
}

TEST(CountDistinctComplexRoots, FiberExamples) {
  EXPECT_EQ(upoly::count_distinct_complex_roots(kQ, P({0, 0, 1})), 1);
  EXPECT_EQ(upoly::count_distinct_complex_roots(kQ, P({0, 1, 0, 1})), 3);
  EXPECT_THROW(upoly::count_distinct_complex_roots(kQ, QPoly{}), Error);
}

TEST(SturmCount, Examples) {
  EXPECT_EQ(sturm_count(P({1, 0, 1})), 0);
  EXPECT_EQ(sturm_count(P({-2, 0, 1})), 2);
  EXPECT_EQ(sturm_count(P({0, -1, 1}), Rational(-1, 2), Rational(2)), 2);
  EXPECT_EQ(sturm_count(P({0, -1, 1}), Rational(0), Rational(1)), 0);
  EXPECT_EQ(sturm_count(P({0, -1, 1}), Rational(0), Rational(2)), 1);
}

TEST(SturmCount, RejectsNonSquarefree) {
  try {
    sturm_count(P({1, -2, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(SturmCount, ConjugationParity) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    QPoly a = test::random_poly(rng, 1 + static_cast<int>(rng() % 8), 5);
    if (a.degree() < 1) continue;
    const int complex = upoly::count_distinct_complex_roots(kQ, a);
    const int real = sturm_count(qpoly::squarefree_part(a));
    EXPECT_EQ((complex - real) % 2, 0);
  }
}

TEST(IsolateRealRoots, Examples) {
  auto r1 = isolate_real_roots(P({0, 1, 0, 1}));
  ASSERT_EQ(r1.size(), 1U);
  EXPECT_LT(r1[0].low, 0);
  EXPECT_GT(r1[0].high, 0);
  EXPECT_TRUE(isolate_real_roots(P({4, 0, 1})).empty());
  auto r3 = isolate_real_roots(P({0, -1, 1}));
  ASSERT_EQ(r3.size(), 2U);
  EXPECT_TRUE(r3[0].low < 0 && 0 < r3[0].high);
  EXPECT_TRUE(r3[1].low < 1 && 1 < r3[1].high);
  EXPECT_LE(r3[0].high, r3[1].low);
}

TEST(IsolateRealRoots, IntervalsCertifiedAndCountMatches) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = test::random_poly(rng, 1 + static_cast<int>(rng() % 8), 4);
    if (a.degree() < 1) continue;
    QPoly s = qpoly::squarefree_part(a);
    auto ivs = isolate_real_roots(a);
    EXPECT_EQ(static_cast<int>(ivs.size()), sturm_count(s));
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      EXPECT_LT(ivs[i].low, ivs[i].high);
      EXPECT_EQ(sturm_count(s, ivs[i].low, ivs[i].high), 1);
      if (i > 0) {
        EXPECT_LE(ivs[i - 1].high, ivs[i].low);
      }
    }
  }
}

TEST(RationalRoots, FindsExactlyTheRationalOnes) {
  // (3x - 2)(x + 5)(x^2 - 2)
  QPoly a = upoly::mul(kQ, upoly::mul(kQ, P({-2, 3}), P({5, 1})), P({-2, 0, 1}));
  auto roots = rational_roots(a);
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_EQ(roots[0], -5);
  EXPECT_EQ(roots[1], Rational(2, 3));
}

TEST(SturmFuzz, AgreesWithDoublePrecisionRoots) {
  std::mt19937 rng(2024);
  int compared = 0;
  for (int trial = 0; compared < 500; ++trial) {
    QPoly a = trial % 2 == 0 ? test::random_poly(rng, 1 + static_cast<int>(rng() % 8), 9)
                             : test::random_split_poly(rng, 8);
    if (a.degree() < 1) continue;
    auto numeric = test::numeric_real_roots(a);
    if (!numeric) continue; // numerically ambiguous
    const QPoly s = qpoly::squarefree_part(a);
    ASSERT_EQ(sturm_count(s), static_cast<int>(numeric->size())) << qpoly::to_string(a);
    // interval counts at random rational cut points away from the numeric roots
    for (int cut = 0; cut < 3; ++cut) {
      Rational lo(static_cast<long>(rng() % 41) - 20, 4), step(static_cast<long>(rng() % 20) + 1, 3);
      lo.canonicalize();
      step.canonicalize();
      const Rational hi = lo + step;
      bool near = false;
      int expected = 0;
      for (double r : *numeric) {
        if (std::abs(r - lo.get_d()) < 1e-6 || std::abs(r - hi.get_d()) < 1e-6) near = true;
        if (r > lo.get_d() && r < hi.get_d()) ++expected;
      }
      if (!near) {
        EXPECT_EQ(sturm_count(s, lo, hi), expected);
      }
    }
    ++compared;
  }
  EXPECT_GE(compared, 500);
}

TEST(NumberFieldArith, Examples) {
  const NumberField gi = NumberField::level1(P({1, 0, 1}), "i");
  EXPECT_EQ(gi.inv(gi.gen(1)), gi.neg(gi.gen(1)));

  const NumberField r2 = NumberField::level1(P({-2, 0, 1}));
  const NfElement a = r2.gen(1);
  EXPECT_EQ(r2.mul(r2.add(r2.one(), a), r2.sub(r2.one(), a)), r2.from_int(-1));

  const NumberField r1 = NumberField::level1(P({-1, 0, 1}));
  auto res = nf_try_invert(r1, r1.sub(r1.gen(1), r1.one()));
  ASSERT_TRUE(std::holds_alternative<SplitEvent>(res));
  const auto& ev = std::get<SplitEvent>(res);
  EXPECT_EQ(ev.level, 1);
  EXPECT_EQ(upoly::monic(kQ, ev.factor1), P({-1, 1}));

  try {
    r2.inv(r2.zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
  EXPECT_TRUE(nf_is_zero(r2, r2.sub(r2.mul(a, a), r2.from_int(2))));
}

TEST(NumberFieldArith, LevelTwoSplitEvent) {
  // b^2 - 1 over Q(sqrt 2) factors
  const NumberField k = NumberField::level2(P({-2, 0, 1}), {P({-1}), QPoly{}, P({1})});
  auto res = nf_try_invert(k, k.add(k.gen(2), k.one()));
  ASSERT_TRUE(std::holds_alternative<SplitEvent>(res));
  EXPECT_EQ(std::get<SplitEvent>(res).level, 2);
  auto [k1, k2] = k.split_minpolys(std::get<SplitEvent>(res));
  EXPECT_EQ(k1.degree2(), 1);
  EXPECT_EQ(k2.degree2(), 1);
}

namespace {

NfElement random_element(const NumberField& k, std::mt19937& rng) {
  NfElement e;
  for (int i = 0; i < k.degree2(); ++i) e.c.push_back(test::random_poly(rng, k.degree1() - 1, 6));
  return k.reduce(e);
}

void check_field_axioms(const NumberField& k, std::mt19937& rng) {
  for (int trial = 0; trial < 40; ++trial) {
    NfElement x = random_element(k, rng), y = random_element(k, rng), z = random_element(k, rng);
    EXPECT_EQ(k.mul(k.mul(x, y), z), k.mul(x, k.mul(y, z)));
    EXPECT_EQ(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
    EXPECT_EQ(k.add(k.add(x, y), z), k.add(x, k.add(y, z)));
    EXPECT_EQ(k.mul(x, y), k.mul(y, x));
    if (!x.is_zero()) {
      EXPECT_EQ(k.mul(x, k.inv(x)), k.one());
    }
  }
}

}

TEST(NumberFieldArith, FieldAxiomsUpToDegreeFour) {
  std::mt19937 rng(99);
  check_field_axioms(NumberField::level1(P({-2, 0, 0, 0, 1})), rng);
  check_field_axioms(NumberField::level1(P({1, 1, 1})), rng);
  check_field_axioms(NumberField::level2(P({-2, 0, 1}), {P({-3}), QPoly{}, P({1})}), rng);
  // b^2 - a over Q(a), a^2 + 1: b is a square root of i
  check_field_axioms(NumberField::level2(P({1, 0, 1}), {P({0, -1}), QPoly{}, P({1})}), rng);
}

TEST(RealEmbeddingSign, Examples) {
  const NumberField k = with_real_embeddings(NumberField::level1(P({-2, 0, 1})));
  ASSERT_EQ(k.real_embeddings().size(), 2U);
  const RealEmbedding& pos = k.real_embeddings()[1];
  const NfElement a = k.gen(1);
  EXPECT_EQ(sign_at(k, a, pos), 1);
  EXPECT_EQ(sign_at(k, a, k.real_embeddings()[0]), -1);
  EXPECT_EQ(sign_at(k, k.sub(k.mul(a, a), k.from_int(2)), pos), 0);
  // oracle: 1.4^2 < 2 < 1.5^2 puts the root in [1.4, 1.5], above 1
  ASSERT_LT(Rational(196, 100), 2);
  ASSERT_GT(Rational(225, 100), 2);
  EXPECT_EQ(sign_at(k, k.sub(k.one(), a), pos), -1);
}

TEST(RealEmbeddingSign, TowerPoints) {
  // b^2 - a over a^2 - 2: real points b = +-2^(1/4) over a = sqrt 2
  const NumberField k = with_real_embeddings(NumberField::level2(P({-2, 0, 1}), {P({0, -1}), QPoly{}, P({1})}));
  ASSERT_EQ(k.real_embeddings().size(), 2U);
  for (const auto& emb : k.real_embeddings()) {
    const double bval = approximate(k, emb, Rational(1, 1000)).second.get_d();
    EXPECT_NEAR(std::abs(bval), std::pow(2.0, 0.25), 0.5);
    const int expected = bval > 0 ? 1 : -1;
    EXPECT_EQ(sign_at(k, k.gen(2), emb), expected);
    EXPECT_EQ(sign_at(k, k.sub(k.mul(k.gen(2), k.gen(2)), k.gen(1)), emb), 0);
    EXPECT_EQ(sign_at(k, k.sub(k.gen(2), k.from_rational(Rational(118, 100))), emb), bval > 0 ? 1 : -1);
  }
}

TEST(RealEmbeddingSign, ZeroDivisorRestrictsToBranch) {
  // a^2 - 1 is reducible: a - 1 is zero at a = 1 and nonzero at a = -1
  const NumberField k = with_real_embeddings(NumberField::level1(P({-1, 0, 1})));
  ASSERT_EQ(k.real_embeddings().size(), 2U);
  const NfElement e = k.sub(k.gen(1), k.one());
  EXPECT_EQ(sign_at(k, e, k.real_embeddings()[0]), -1);
  EXPECT_EQ(sign_at(k, e, k.real_embeddings()[1]), 0);
}

TEST(DynamicEvaluation, OverBranchesSplitsReducibleTower) {
  const NumberField k = with_real_embeddings(NumberField::level1(P({0, -1, 0, 1})));
  auto branches = over_branches(k, [](const NumberField& f) {
    // a is zero only on the branch a = 0, invertible elsewhere
    if (!f.is_zero(f.gen(1))) (void)f.inv(f.gen(1));
    return f.degree1();
  });
  int total = 0, real = 0;
  for (const auto& [f, d] : branches) {
    total += d;
    real += static_cast<int>(f.real_embeddings().size());
  }
  EXPECT_EQ(total, 3);
  EXPECT_EQ(real, 3);
  EXPECT_GE(branches.size(), 2U);
}
