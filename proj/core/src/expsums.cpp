#include "pslab/expsums.hpp"

#include <algorithm>
#include <cmath>

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"
#include "pslab/primes.hpp"

namespace pslab {

namespace {

mpz_class from_u64(std::uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

// alpha * h at the precision that keeps alpha h p^2 accurate for p <= n_max.
FixedReal scaled_alpha(const AlphaSpec& alpha, std::int64_t h, std::uint64_t n_max) {
  const int bits = reduction_bits(static_cast<std::uint64_t>(h), n_max);
  return alpha.evaluate(bits) * mpz_class(static_cast<long>(h));
}

std::complex<double> phase_term(const FixedReal& alpha_h, std::uint64_t p) {
  const mpz_class pz = from_u64(p);
  return e_of(alpha_h * mpz_class(pz * pz)).value();
}

double min_term(double H, const FixedReal& x) {
  const double t = dist_nearest(x).to_double();
  if (t == 0.0) return 1.0;
  return std::min(1.0, 1.0 / (H * t));
}

// psi(-(p+1)^gamma) - psi(-p^gamma) in fixed point.
double psi_difference(std::uint64_t p, const Rational& gamma) {
  const PowerPair pair = power_pair(p, gamma);
  return (psi_of_negated(pair.upper) - psi_of_negated(pair.lower)).to_double();
}

}  // namespace

BoundReport BoundReport::make(double value, double bound,
                              std::map<std::string, double> meta) {
  BoundReport r;
  r.value = value;
  r.bound = bound;
  r.ratio = bound > 0.0 ? value / bound : 0.0;
  r.meta = std::move(meta);
  return r;
}

std::complex<double> prime_phase_sum(const AlphaSpec& alpha, std::int64_t h,
                                     std::uint64_t y) {
  if (h < 1) throw RangeError("prime_phase_sum requires h >= 1");
  const auto primes = primes_up_to(y);
  if (primes.empty()) return {};
  const FixedReal ah = scaled_alpha(alpha, h, y);
  return ordered_sum<std::complex<double>>(primes.size(), [&](std::size_t i) {
    return phase_term(ah, primes[i]) * std::log(static_cast<double>(primes[i]));
  });
}

BoundReport ghosh_bound_report(const AlphaSpec& alpha, std::int64_t h,
                               std::uint64_t N, const DirichletApproximant& approx) {
  if (approx.h != h) throw RangeError("approximant was built for a different h");
  const double value = std::abs(prime_phase_sum(alpha, h, N));
  const double n = static_cast<double>(N);
  const double qh = static_cast<double>(approx.q_h);
  const double bound = n * std::pow(1.0 / qh + 1.0 / std::sqrt(n) + qh / (n * n), 0.25);
  return BoundReport::make(value, bound,
                           {{"N", n}, {"h", static_cast<double>(h)}, {"q_h", qh},
                            {"a_h", static_cast<double>(approx.a_h)}});
}

std::complex<double> sigma_sum(const AlphaSpec& alpha, std::int64_t h,
                               const Rational& gamma, std::uint64_t N) {
  if (h < 1) throw RangeError("sigma_sum requires h >= 1");
  const auto primes = primes_up_to(N);
  if (primes.empty()) return {};
  const FixedReal ah = scaled_alpha(alpha, h, N);
  return ordered_sum<std::complex<double>>(primes.size(), [&](std::size_t i) {
    const std::uint64_t p = primes[i];
    return psi_difference(p, gamma) * std::log(static_cast<double>(p)) *
           phase_term(ah, p);
  });
}

WeightedPartialSums weighted_partial_sums(const AlphaSpec& alpha, const Rational& gamma,
                                          std::uint64_t N, double u) {
  if (!(u >= 1.0)) throw RangeError("weighted_partial_sums requires u >= 1");
  const auto hmax = static_cast<std::int64_t>(std::floor(u));
  const auto primes = primes_up_to(N);
  WeightedPartialSums out;
  if (primes.empty()) return out;

  const int bits = reduction_bits(static_cast<std::uint64_t>(hmax), N);
  const FixedReal a = alpha.evaluate(bits);
  struct Weights {
    double smooth = 0.0;    // p^(gamma-1) log p
    double sawtooth = 0.0;  // (psi(-(p+1)^gamma) - psi(-p^gamma)) log p
  };
  const auto weights = ordered_map<Weights>(primes.size(), [&](std::size_t i) {
    const std::uint64_t p = primes[i];
    const double logp = std::log(static_cast<double>(p));
    const PowerPair pair = power_pair(p, gamma);
    const double pg = pair.lower.value.to_double();
    return Weights{pg / static_cast<double>(p) * logp,
                   (psi_of_negated(pair.upper) - psi_of_negated(pair.lower)).to_double() *
                       logp};
  });

  CompensatedSum frak, g;
  for (std::int64_t h = 1; h <= hmax; ++h) {
    const FixedReal ah = a * mpz_class(static_cast<long>(h));
    const auto phases = ordered_map<std::complex<double>>(
        primes.size(), [&](std::size_t i) { return phase_term(ah, primes[i]); });
    const auto inner_s = ordered_sum<std::complex<double>>(
        primes.size(), [&](std::size_t i) { return weights[i].smooth * phases[i]; });
    const auto inner_g = ordered_sum<std::complex<double>>(
        primes.size(), [&](std::size_t i) { return weights[i].sawtooth * phases[i]; });
    frak.add(std::abs(inner_s));
    g.add(std::abs(inner_g));
  }
  out.frak_s = frak.value();
  out.g = g.value();
  return out;
}

double omega_sum(const AlphaSpec& alpha, const FixedReal& beta, double delta,
                 std::uint64_t H, std::uint64_t N) {
  if (H < 1) throw RangeError("omega_sum requires H >= 1");
  if (!(delta > 0.0 && delta < 0.5)) throw RangeError("omega_sum requires Delta in (0, 1/2)");
  const int bits = std::max(reduction_bits(1, N), beta.frac_bits());
  const FixedReal a = alpha.evaluate(bits);
  const FixedReal b = beta.with_precision(bits);
  const FixedReal d = FixedReal::from_double(delta, bits);
  const double hh = static_cast<double>(H);
  return ordered_sum<double>(N, [&](std::size_t i) {
    const mpz_class n = from_u64(i + 1);
    const FixedReal x = a * mpz_class(n * n) + b;
    return min_term(hh, x + d) + min_term(hh, x - d);
  });
}

BoundReport omega_bound_report(const AlphaSpec& alpha, const FixedReal& beta,
                               double delta, std::uint64_t H, std::uint64_t N,
                               std::int64_t q) {
  if (q < 1) throw RangeError("omega_bound_report requires q >= 1");
  const double value = omega_sum(alpha, beta, delta, H, N);
  const double n = static_cast<double>(N);
  const double hh = static_cast<double>(H);
  const double qq = static_cast<double>(q);
  const double bound = n / std::sqrt(qq) + std::sqrt(n) + n / hh + std::sqrt(qq / hh);
  return BoundReport::make(value, bound, {{"N", n}, {"H", hh}, {"q", qq}, {"Delta", delta}});
}

BoundReport sargos_check(const PhaseSpec& phase, std::int64_t a, std::int64_t b) {
  if (a < 0 || b <= a) throw RangeError("sargos_check requires 0 <= a < b");
  // f''' for the supported phases is monotone; interior samples guard the
  // sign condition all the same.
  constexpr int kSamples = 64;
  double lo = INFINITY, hi = 0.0;
  int sign = 0;
  for (int k = 0; k <= kSamples; ++k) {
    const double x = static_cast<double>(a) +
                     static_cast<double>(b - a) * static_cast<double>(k) / kSamples;
    const double f3 = phase.third_derivative(x);
    if (!std::isfinite(f3) || f3 == 0.0) {
      throw HypothesisViolated("f''' vanishes or is undefined at " + std::to_string(x) +
                               " for " + phase.to_string());
    }
    const int s = f3 > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) {
      throw HypothesisViolated("f''' changes sign on [a, b] for " + phase.to_string());
    }
    sign = s;
    lo = std::min(lo, std::abs(f3));
    hi = std::max(hi, std::abs(f3));
  }
  if (hi / lo > kThirdDerivativeSpread) {
    throw HypothesisViolated("max|f'''|/min|f'''| = " + std::to_string(hi / lo) +
                             " exceeds 16 on [a, b]");
  }

  const auto fixed = static_cast<std::uint64_t>(phase.fixed());
  const auto ub = static_cast<std::uint64_t>(b);
  const PhaseEvaluator eval(phase, std::max(ub, fixed), ub * fixed);
  const auto count = static_cast<std::size_t>(b - a);
  const double value = std::abs(ordered_sum<std::complex<double>>(count, [&](std::size_t i) {
    return eval.e_at(static_cast<std::uint64_t>(a) + 1 + i).value();
  }));
  const double lambda = hi;
  const double bound =
      static_cast<double>(b - a) * std::pow(lambda, 1.0 / 6.0) + std::pow(lambda, -1.0 / 3.0);
  return BoundReport::make(value, bound,
                           {{"a", static_cast<double>(a)},
                            {"b", static_cast<double>(b)},
                            {"lambda", lambda},
                            {"spread", hi / lo}});
}

WvdcResult wvdc_check(std::span<const std::complex<double>> seq, std::int64_t Q) {
  if (Q < 1) throw RangeError("wvdc_check requires Q >= 1");
  const auto len = static_cast<std::int64_t>(seq.size());
  ComplexCompensatedSum total;
  for (const auto& z : seq) total.add(z);
  WvdcResult out;
  out.lhs = std::norm(total.value());

  CompensatedSum shifted;
  for (std::int64_t r = -Q; r <= Q; ++r) {
    const double w = 1.0 - static_cast<double>(std::abs(r)) / static_cast<double>(Q);
    if (w == 0.0) continue;
    ComplexCompensatedSum corr;
    const std::int64_t start = std::max<std::int64_t>(0, -r);
    const std::int64_t stop = std::min<std::int64_t>(len, len - r);
    for (std::int64_t i = start; i < stop; ++i) {
      corr.add(seq[static_cast<std::size_t>(i + r)] * std::conj(seq[static_cast<std::size_t>(i)]));
    }
    shifted.add(w * corr.value().real());
  }
  out.rhs = (1.0 + static_cast<double>(len) / static_cast<double>(Q)) * shifted.value();
  if (out.lhs > out.rhs + 1e-9 * std::abs(out.rhs)) {
    throw InequalityViolated("Weyl-van der Corput inequality failed: lhs " +
                             std::to_string(out.lhs) + " > rhs " + std::to_string(out.rhs));
  }
  return out;
}

std::complex<double> differenced_phase_sum(const PhaseSpec& phase, std::int64_t l,
                                           std::int64_t r, std::int64_t D,
                                           std::int64_t N1, std::int64_t N2) {
  if (l < 1 || l + r < 1) throw RangeError("differenced_phase_sum requires l, l + r >= 1");
  if (D < 1 || N1 < 0 || N2 <= N1) {
    throw RangeError("differenced_phase_sum requires D >= 1 and 0 <= N1 < N2");
  }
  const std::int64_t lr = l + r;
  const std::int64_t d1 = std::max({D, N1 / l, N1 / lr});
  const std::int64_t d2 = std::min({2 * D, N2 / l, N2 / lr});
  if (d2 <= d1) return {};
  const auto reach = static_cast<std::uint64_t>(std::max({2 * D, l, lr}));
  const PhaseEvaluator eval(phase, reach,
                            static_cast<std::uint64_t>(2 * D) *
                                static_cast<std::uint64_t>(std::max(l, lr)));
  const auto ul = static_cast<std::uint64_t>(l);
  const auto ulr = static_cast<std::uint64_t>(lr);
  return ordered_sum<std::complex<double>>(static_cast<std::size_t>(d2 - d1), [&](std::size_t i) {
    const std::uint64_t d = static_cast<std::uint64_t>(d1) + 1 + i;
    return e_of(eval.at(d, ulr) - eval.at(d, ul)).value();
  });
}

}  // namespace pslab
