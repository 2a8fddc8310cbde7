#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pslab/errors.hpp"
#include "pslab/primes.hpp"

using pslab::Rational;

TEST(Sieve, SmallSegment) {
  const auto s = pslab::sieve(1, 10);
  EXPECT_EQ(s.primes(), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_DOUBLE_EQ(s.von_mangoldt(8), std::log(2.0));
  EXPECT_EQ(s.von_mangoldt(6), 0.0);
  EXPECT_EQ(s.von_mangoldt(1 + 1), std::log(2.0));
}

TEST(Sieve, SinglePoint) {
  const auto s = pslab::sieve(1, 2);
  EXPECT_EQ(s.primes(), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(s.mobius(2), -1);
  EXPECT_EQ(s.divisor_count(2), 2u);
}

TEST(Sieve, HighWindowMatchesTrialDivision) {
  const std::uint64_t lo = 1000000;
  const auto s = pslab::sieve(lo, lo + 100);
  std::size_t want = 0;
  for (std::uint64_t n = lo + 1; n <= lo + 100; ++n) {
    want += oracle::is_prime(n);
    EXPECT_EQ(s.is_prime(n), oracle::is_prime(n)) << n;
    EXPECT_EQ(s.mobius(n), oracle::mobius(n)) << n;
    EXPECT_EQ(s.divisor_count(n), oracle::divisor_count(n)) << n;
    EXPECT_NEAR(s.von_mangoldt(n), oracle::von_mangoldt(n), 1e-12) << n;
  }
  EXPECT_EQ(want, 6u);
  EXPECT_EQ(s.primes().size(), 6u);
}

TEST(Sieve, Preconditions) {
  EXPECT_THROW(pslab::sieve(0, 10), pslab::RangeError);
  EXPECT_THROW(pslab::sieve(10, 10), pslab::RangeError);
  EXPECT_THROW(pslab::sieve(1, 1000, 100), pslab::SegmentTooLarge);
  EXPECT_NO_THROW(pslab::sieve(1, 101, 100));
}

TEST(ArithmeticTable, MatchesTrialDivision) {
  const pslab::ArithmeticTable t(3000);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    EXPECT_EQ(t.is_prime(n), oracle::is_prime(n)) << n;
    EXPECT_EQ(t.mobius(n), oracle::mobius(n)) << n;
    EXPECT_EQ(t.divisor_count(n), oracle::divisor_count(n)) << n;
    EXPECT_NEAR(t.von_mangoldt(n), oracle::von_mangoldt(n), 1e-12) << n;
  }
}

TEST(PrimesUpTo, CountsAndEdges) {
  EXPECT_TRUE(pslab::primes_up_to(1).empty());
  EXPECT_EQ(pslab::primes_up_to(2), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(pslab::primes_up_to(1000000).size(), 78498u);
  EXPECT_EQ(pslab::primes_up_to(3000), oracle::primes_to(3000));
}

TEST(PsPrime, Examples) {
  const Rational g(19, 20);
  const auto w = pslab::is_ps_prime(2, g);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->n, 2u);
  EXPECT_FALSE(pslab::is_ps_prime(31, g).has_value());
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 97, 101}) {
    EXPECT_TRUE(pslab::is_ps_prime(p, Rational(999999, 1000000)).has_value()) << p;
  }
}

TEST(PsPrime, AgreesWithIntegerOracle) {
  for (auto p : oracle::primes_to(5000)) {
    const auto got = pslab::is_ps_prime(p, Rational(19, 20));
    const auto want = oracle::ps_witness(p, 19, 20);
    ASSERT_EQ(got.has_value(), want.has_value()) << p;
    if (got) {
      EXPECT_EQ(got->n, *want) << p;
    }
  }
}

TEST(PsPrime, GammaRange) {
  EXPECT_THROW(pslab::is_ps_prime(5, Rational(1)), pslab::GammaOutOfRange);
  EXPECT_THROW(pslab::is_ps_prime(5, Rational(0)), pslab::GammaOutOfRange);
  EXPECT_THROW(pslab::is_ps_prime(5, Rational(3, 2)), pslab::GammaOutOfRange);
  // Any gamma in (0, 1) is accepted, not just (13/14, 1).
  EXPECT_NO_THROW(pslab::is_ps_prime(5, Rational(1, 2)));
}

TEST(PsPrime, IndicatorIsFloorDifference) {
  const Rational g(19, 20);
  for (std::uint64_t p : {2, 3, 31, 997}) {
    const auto pair = pslab::power_pair(p, g);
    const int ind = pair.indicator();
    EXPECT_TRUE(ind == 0 || ind == 1);
    // [-p^g] - [-(p+1)^g]
    const mpz_class direct = (-pair.lower.value).floor() - (-pair.upper.value).floor();
    EXPECT_EQ(direct, ind) << p;
    EXPECT_EQ(ind == 1, pslab::is_ps_prime(p, g).has_value()) << p;
  }
}

TEST(PsCount, SmallLimits) {
  const Rational g(19, 20);
  EXPECT_EQ(pslab::ps_count(10, g).count, 4u);
  EXPECT_EQ(pslab::ps_count(2, g).count, 1u);
  const auto list = pslab::ps_primes(10, g);
  ASSERT_EQ(list.size(), 4u);
  EXPECT_EQ(list[3], (pslab::PsWitness{7, 7}));
}

TEST(PsCount, DensityRatioAtOneHundredThousand) {
  const auto c = pslab::ps_count(100000, Rational(19, 20));
  EXPECT_GE(c.ratio, 0.5);
  EXPECT_LE(c.ratio, 2.0);
  EXPECT_TRUE(c.ambiguous.empty());
}
