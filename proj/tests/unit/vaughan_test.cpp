#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pslab/errors.hpp"
#include "pslab/vaughan.hpp"

using pslab::PhaseSpec;

TEST(VaughanCoeffs, SmallValues) {
  const auto k2 = pslab::build_coeffs(2, 10);
  EXPECT_DOUBLE_EQ(k2.c(2), std::log(2.0));
  EXPECT_EQ(k2.a(1), 1);
  const auto k3 = pslab::build_coeffs(3, 10);
  EXPECT_NEAR(k3.c(6), -std::log(6.0), 1e-15);
  EXPECT_EQ(k3.c(10), 0.0);  // beyond theta^2
}

TEST(VaughanCoeffs, MatchDefinitionAndBounds) {
  for (std::uint64_t theta : {2, 5, 10, 31}) {
    const std::uint64_t dmax = 2000;
    const auto k = pslab::build_coeffs(theta, dmax);
    for (std::uint64_t d = 1; d <= theta * theta; ++d) {
      double c = 0;
      for (std::uint64_t r = 1; r <= theta; ++r) {
        if (d % r != 0 || d / r > theta) continue;
        c += oracle::mobius(r) * oracle::von_mangoldt(d / r);
      }
      EXPECT_NEAR(k.c(d), c, 1e-12) << theta << " " << d;
      EXPECT_LE(std::abs(k.c(d)), std::log(static_cast<double>(d)) * (1 + 1e-12));
    }
    for (std::uint64_t d = 1; d <= dmax; ++d) {
      std::int64_t a = 0;
      for (std::uint64_t r = 1; r <= std::min(theta, d); ++r) {
        if (d % r == 0) a += oracle::mobius(r);
      }
      EXPECT_EQ(k.a(d), a) << theta << " " << d;
      EXPECT_LE(static_cast<std::uint64_t>(std::abs(a)), oracle::divisor_count(d));
    }
  }
  EXPECT_THROW(pslab::build_coeffs(1, 10), pslab::RangeError);
}

TEST(ThetaSums, ZeroPhaseGivesLambdaSum) {
  const auto t = pslab::theta_sums(4, 12, 2, PhaseSpec::zero());
  EXPECT_NEAR(t.combined().real(), std::log(5.0 * 7 * 2 * 3 * 11), 1e-12);
  EXPECT_NEAR(t.combined().imag(), 0.0, 1e-12);
}

TEST(ThetaSums, SingleCompositeTerm) {
  // (5, 6]: Lambda(6) = 0.
  const auto t = pslab::theta_sums(5, 6, 2, PhaseSpec::zero());
  EXPECT_NEAR(std::abs(t.combined()), 0.0, 1e-12);
}

TEST(ThetaSums, Preconditions) {
  EXPECT_THROW(pslab::theta_sums(3, 12, 5, PhaseSpec::zero()), pslab::RangeError);
  EXPECT_THROW(pslab::theta_sums(10, 10, 2, PhaseSpec::zero()), pslab::RangeError);
  EXPECT_THROW(pslab::theta_sums(10, 20, 1, PhaseSpec::zero()), pslab::RangeError);
}

TEST(IdentityCheck, ZeroPhaseResidualIsRoundingOnly) {
  EXPECT_LE(pslab::identity_residual(4, 12, 2, PhaseSpec::zero()), 1e-12);
  EXPECT_EQ(pslab::identity_residual(12, 12, 2, PhaseSpec::zero()), 0.0);
  EXPECT_EQ(pslab::identity_residual(20, 12, 2, PhaseSpec::zero()), 0.0);
}

TEST(IdentityCheck, ZeroPhaseIsChebyshevDifference) {
  const auto c = pslab::identity_check(100, 900, 20, PhaseSpec::zero());
  double want = 0;
  for (std::uint64_t n = 101; n <= 900; ++n) want += oracle::von_mangoldt(n);
  EXPECT_NEAR(c.phi_direct.real(), want, 1e-9);
  EXPECT_NEAR(c.thetas.combined().real(), want, 1e-9);
}

TEST(IdentityCheck, BilinearAndMonomialPhases) {
  const auto bil = PhaseSpec::bilinear(pslab::AlphaSpec::parse("sqrt:3"), 2, 5, pslab::Rational(19, 20));
  EXPECT_LE(pslab::identity_residual(50, 800, 7, bil), 1e-9 * 751);
  const auto mono = PhaseSpec::monomial(pslab::FixedReal::from_decimal("0.0003", 128), 2);
  EXPECT_LE(pslab::identity_residual(31, 1000, 31, mono), 1e-9 * 970);
}

TEST(PointwiseIdentity, ReconstructsLambda) {
  const pslab::ArithmeticTable table(10000);
  for (std::uint64_t theta : {2, 5, 10, 31}) {
    const auto k = pslab::build_coeffs(theta, 10000);
    for (std::uint64_t n = theta + 1; n <= 10000; ++n) {
      ASSERT_NEAR(pslab::vaughan_lambda(n, k, table), table.von_mangoldt(n), 1e-9)
          << "theta=" << theta << " n=" << n;
    }
    EXPECT_THROW(pslab::vaughan_lambda(theta, k, table), pslab::RangeError);
  }
}
