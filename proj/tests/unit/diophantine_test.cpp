#include <gtest/gtest.h>

#include <numeric>

#include "bridge.hpp"
#include "pslab/diophantine.hpp"
#include "pslab/errors.hpp"

using pslab::AlphaSpec;
using pslab::Convergent;

TEST(AlphaSpec, GrammarIsExact) {
  EXPECT_EQ(AlphaSpec::parse("sqrt:2").kind(), AlphaSpec::Kind::surd);
  EXPECT_EQ(AlphaSpec::parse("dec:1.25").kind(), AlphaSpec::Kind::decimal);
  EXPECT_EQ(AlphaSpec::parse("rat:3/7").kind(), AlphaSpec::Kind::rational);
  EXPECT_EQ(AlphaSpec::parse("rat:-3/7").kind(), AlphaSpec::Kind::rational);
  for (const char* bad : {"sqrt:4", "sqrt:1", "sqrt:0", "sqrt:-2", "sqrt:2 ", " sqrt:2", "SQRT:2",
                          "dec:1.", "dec:.5", "dec:1e5", "rat:1/0", "rat:1", "rat:1/-2", "2",
                          "sqrt:", "dec:", "rat:"}) {
    EXPECT_THROW(AlphaSpec::parse(bad), pslab::PreconditionError) << bad;
  }
}

TEST(AlphaSpec, EvaluateRoundsDown) {
  const auto a = AlphaSpec::parse("sqrt:2").evaluate(200);
  const oracle::Float want = oracle::surd(2);
  const oracle::Float got = oracle::to_float(a);
  EXPECT_LE(got, want);
  EXPECT_LT(want - got, boost::multiprecision::ldexp(oracle::Float(1), -200));
}

TEST(AlphaSpec, DecimalNeedsEnoughDigits) {
  const auto a = AlphaSpec::parse("dec:0.1");
  EXPECT_THROW(a.evaluate(64), pslab::PrecisionExhausted);
  const auto b = AlphaSpec::parse("dec:0.1000000000000000000000");
  EXPECT_NO_THROW(b.evaluate(64));
}

TEST(Convergents, SqrtTwo) {
  const auto c = pslab::convergents(AlphaSpec::parse("sqrt:2"), 5);
  const std::vector<Convergent> want{{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}};
  EXPECT_EQ(c, want);
}

TEST(Convergents, SqrtFive) {
  const auto c = pslab::convergents(AlphaSpec::parse("sqrt:5"), 4);
  const std::vector<Convergent> want{{2, 1}, {9, 4}, {38, 17}, {161, 72}};
  EXPECT_EQ(c, want);
}

TEST(Convergents, RationalExpansionEnds) {
  const auto a = AlphaSpec::parse("rat:3/7");
  EXPECT_THROW(pslab::convergents(a, 3), pslab::RationalAlpha);
  const auto c = pslab::convergents(a, 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.back(), (Convergent{3, 7}));
}

TEST(Convergents, DecimalIsTheExactRational) {
  // 1.4142 = 7071/5000 has a finite expansion.
  const auto a = AlphaSpec::parse("dec:1.4142");
  EXPECT_THROW(pslab::convergents(a, 50), pslab::RationalAlpha);
  EXPECT_EQ(pslab::convergents(a, 3), pslab::convergents(AlphaSpec::parse("sqrt:2"), 3));
}

TEST(Convergents, MatchIndependentRecurrence) {
  for (std::int64_t D = 2; D <= 60; ++D) {
    const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(D)));
    if (r * r == D) continue;
    const auto want = oracle::surd_convergents(D, 10);
    const auto got = pslab::convergents(AlphaSpec::surd(D), 10);
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(got[i].a, want[i].a) << "D=" << D << " k=" << i;
      EXPECT_EQ(got[i].q, want[i].q) << "D=" << D << " k=" << i;
    }
  }
}

TEST(Convergents, ShiftedSurd) {
  // sqrt(2) + 3 has convergents a + 3q over the same denominators.
  const auto base = pslab::convergents(AlphaSpec::surd(2), 6);
  const auto shifted = pslab::convergents(AlphaSpec::surd(2).plus_integer(3), 6);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(shifted[i].q, base[i].q);
    EXPECT_EQ(shifted[i].a, base[i].a + 3 * base[i].q);
  }
}

TEST(ConvergentWithDenominator, FindsOrRejects) {
  const auto a = AlphaSpec::parse("sqrt:2");
  EXPECT_EQ(pslab::convergent_with_denominator(a, 985), (Convergent{1393, 985}));
  EXPECT_FALSE(pslab::convergent_with_denominator(a, 986).has_value());
}

TEST(Dirichlet, SqrtTwoExamples) {
  const auto a = AlphaSpec::parse("sqrt:2");
  const auto d = pslab::dirichlet_approx(a, 1, 5);
  EXPECT_EQ(d.a_h, 17);
  EXPECT_EQ(d.q_h, 12);
  const auto one = pslab::dirichlet_approx(a, 1, 1);
  EXPECT_EQ(one.a_h, 1);
  EXPECT_EQ(one.q_h, 1);
}

TEST(Dirichlet, TwoRootTwoAgainstExhaustiveScan) {
  const auto a = AlphaSpec::parse("sqrt:2");
  const auto d = pslab::dirichlet_approx(a, 2, 5);
  const oracle::Float x = 2 * oracle::surd(2);
  // Every q' <= 25 whose best numerator satisfies |x - a'/q'| <= 1/(25 q').
  std::vector<std::pair<std::int64_t, std::int64_t>> valid;
  for (std::int64_t q = 1; q <= 25; ++q) {
    const auto num = static_cast<std::int64_t>(boost::multiprecision::round(x * q));
    if (boost::multiprecision::abs(x - oracle::ratio(num, q)) <= oracle::ratio(1, 25 * q)) {
      valid.emplace_back(num, q);
    }
  }
  ASSERT_FALSE(valid.empty());
  EXPECT_LE(d.q_h, 25);
  EXPECT_NE(std::find(valid.begin(), valid.end(), std::make_pair(d.a_h, d.q_h)), valid.end());
  EXPECT_EQ(std::gcd(d.a_h, d.q_h), 1);
}

TEST(QhAudit, Shapes) {
  const auto a = AlphaSpec::parse("sqrt:2");
  const auto audit29 = pslab::qh_range_audit(a, {41, 29}, 5);
  ASSERT_EQ(audit29.rows.size(), 5u);
  for (std::size_t i = 0; i < audit29.rows.size(); ++i) {
    EXPECT_EQ(audit29.rows[i].h, static_cast<std::int64_t>(i + 1));
  }
  const auto empty = pslab::qh_range_audit(a, {41, 29}, 0);
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_EQ(empty.violations, 0u);
  const auto audit985 = pslab::qh_range_audit(a, {1393, 985}, 31);
  EXPECT_EQ(audit985.rows.size(), 31u);
  std::size_t counted = 0;
  for (const auto& r : audit985.rows) {
    counted += !r.in_range;
    const double q = 985.0;
    EXPECT_EQ(r.in_range, r.q_h > std::cbrt(q) && r.q_h <= 985 * 985);
  }
  EXPECT_EQ(counted, audit985.violations);
}

TEST(ApproximationHolds, RationalIsExact) {
  const auto a = AlphaSpec::parse("rat:1/3");
  // |1/3 - 1/3| = 0 < anything
  EXPECT_TRUE(pslab::approximation_holds(a, 1, 1, 3, 3, true));
  // |2/3 - 1/2| = 1/6 vs 1/(2*3) = 1/6: equal, so only the non-strict form holds.
  EXPECT_FALSE(pslab::approximation_holds(a, 2, 1, 2, 3, true));
  EXPECT_TRUE(pslab::approximation_holds(a, 2, 1, 2, 3, false));
}
