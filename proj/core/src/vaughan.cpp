#include "pslab/vaughan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"

namespace pslab {

namespace {

// Relative slack for |c(d)| <= log d, which is tight (c(6) = -log 6 for
// theta = 3) and only rounding separates the two sides.
constexpr double kCoeffSlack = 1e-12;

}  // namespace

VaughanCoeffs build_coeffs(std::uint64_t theta, std::uint64_t d_max) {
  if (theta < 2) throw RangeError("Vaughan cutoff must be >= 2");
  const std::uint64_t c_max = theta * theta;
  const ArithmeticTable table(std::max(c_max, d_max));

  VaughanCoeffs k;
  k.theta_ = theta;
  k.c_.assign(c_max + 1, 0.0);
  for (std::uint64_t r = 1; r <= theta; ++r) {
    const int mu = table.mobius(r);
    if (mu == 0) continue;
    for (std::uint64_t s = 1; s <= theta; ++s) {
      const double lam = table.von_mangoldt(s);
      if (lam != 0.0) k.c_[r * s] += mu * lam;
    }
  }
  k.a_.assign(d_max + 1, 0);
  for (std::uint64_t r = 1; r <= std::min(theta, d_max); ++r) {
    const int mu = table.mobius(r);
    if (mu == 0) continue;
    for (std::uint64_t d = r; d <= d_max; d += r) k.a_[d] += mu;
  }

  for (std::uint64_t d = 1; d <= c_max; ++d) {
    const double logd = std::log(static_cast<double>(d));
    if (std::abs(k.c_[d]) > logd * (1.0 + kCoeffSlack)) {
      throw BoundViolated("|c(" + std::to_string(d) + ")| = " + std::to_string(std::abs(k.c_[d])) +
                          " exceeds log d");
    }
  }
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    if (static_cast<std::uint64_t>(std::abs(k.a_[d])) > table.divisor_count(d)) {
      throw BoundViolated("|a(" + std::to_string(d) + ")| exceeds tau(d)");
    }
  }
  return k;
}

ThetaSums theta_sums(std::int64_t N1, std::int64_t N2, std::uint64_t theta,
                     const PhaseSpec& phase) {
  if (theta < 2) throw RangeError("Vaughan cutoff must be >= 2");
  if (N1 < static_cast<std::int64_t>(theta)) {
    throw RangeError("theta_sums requires N1 >= theta (identity holds for n > theta)");
  }
  if (N2 <= N1) throw RangeError("theta_sums requires N1 < N2");

  const auto n1 = static_cast<std::uint64_t>(N1);
  const auto n2 = static_cast<std::uint64_t>(N2);
  const std::uint64_t d4_max = n2 / (theta + 1);
  const VaughanCoeffs coeffs = build_coeffs(theta, d4_max);
  const ArithmeticTable table(n2);
  const PhaseEvaluator eval(phase, n2, n2);

  // sum over N1/d < l <= N2/d of weight(l) e(f(d, l))
  auto inner = [&](std::uint64_t d, std::uint64_t l_floor, auto weight) {
    const std::uint64_t lo = std::max(n1 / d, l_floor);
    const std::uint64_t hi = n2 / d;
    if (hi <= lo) return std::complex<double>{};
    return ordered_sum<std::complex<double>>(hi - lo, [&](std::size_t i) {
      const std::uint64_t l = lo + 1 + i;
      const double w = weight(l);
      if (w == 0.0) return std::complex<double>{};
      return w * eval.e_at(d, l).value();
    });
  };
  const auto unit = [](std::uint64_t) { return 1.0; };
  const auto log_l = [](std::uint64_t l) { return std::log(static_cast<double>(l)); };
  const auto lambda_l = [&](std::uint64_t l) { return table.von_mangoldt(l); };

  ComplexCompensatedSum t1, t2, t3, t4;
  for (std::uint64_t d = 1; d <= std::min(theta, n2); ++d) {
    if (const int mu = table.mobius(d); mu != 0) t1.add(static_cast<double>(mu) * inner(d, 0, log_l));
    if (const double c = coeffs.c(d); c != 0.0) t2.add(c * inner(d, 0, unit));
  }
  for (std::uint64_t d = theta + 1; d <= std::min(theta * theta, n2); ++d) {
    if (const double c = coeffs.c(d); c != 0.0) t3.add(c * inner(d, 0, unit));
  }
  for (std::uint64_t d = theta + 1; d <= d4_max; ++d) {
    if (const std::int64_t a = coeffs.a(d); a != 0) {
      t4.add(static_cast<double>(a) * inner(d, theta, lambda_l));
    }
  }
  return {t1.value(), t2.value(), t3.value(), t4.value()};
}

IdentityCheck identity_check(std::int64_t N1, std::int64_t N2, std::uint64_t theta,
                             const PhaseSpec& phase) {
  IdentityCheck out;
  if (N1 >= N2) return out;
  out.thetas = theta_sums(N1, N2, theta, phase);

  const auto n1 = static_cast<std::uint64_t>(N1);
  const auto n2 = static_cast<std::uint64_t>(N2);
  const ArithmeticTable table(n2);
  const PhaseEvaluator eval(phase, n2, n2);
  out.phi_direct = ordered_sum<std::complex<double>>(n2 - n1, [&](std::size_t i) {
    const std::uint64_t n = n1 + 1 + i;
    const double lam = table.von_mangoldt(n);
    if (lam == 0.0) return std::complex<double>{};
    return lam * eval.e_at(n, 1).value();
  });
  out.residual = std::abs(out.phi_direct - out.thetas.combined());
  const double tolerance = kIdentityTolerance * static_cast<double>(N2 - N1 + 1);
  if (out.residual > tolerance) {
    throw IdentityViolated("Vaughan identity residual " + std::to_string(out.residual) +
                           " exceeds " + std::to_string(tolerance));
  }
  return out;
}

double identity_residual(std::int64_t N1, std::int64_t N2, std::uint64_t theta,
                         const PhaseSpec& phase) {
  return identity_check(N1, N2, theta, phase).residual;
}

double vaughan_lambda(std::uint64_t n, const VaughanCoeffs& coeffs,
                      const ArithmeticTable& table) {
  const std::uint64_t theta = coeffs.theta();
  if (n <= theta) throw RangeError("pointwise identity requires n > theta");
  if (n > table.limit()) throw RangeError("arithmetic table does not cover n");
  CompensatedSum type1, type2, bilinear;
  auto visit = [&](std::uint64_t d) {
    const std::uint64_t l = n / d;
    if (d <= theta) {
      type1.add(table.mobius(d) * std::log(static_cast<double>(l)));
    }
    type2.add(coeffs.c(d));
    if (d > theta && l > theta) {
      const double lam = table.von_mangoldt(l);
      if (lam != 0.0) bilinear.add(static_cast<double>(coeffs.a(d)) * lam);
    }
  };
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    visit(d);
    if (d * d != n) visit(n / d);
  }
  return type1.value() - type2.value() - bilinear.value();
}

}  // namespace pslab
