#include "pslab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pslab/errors.hpp"
#include "pslab/expsums.hpp"
#include "pslab/parallel.hpp"
#include "pslab/primes.hpp"

namespace pslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t floor_power(std::uint64_t base, const Rational& exponent) {
  const PowFloor f = floor_pow(base, exponent, 128);
  return f.floor.get_ui();
}

double nearest_distance(double x) { return std::abs(x - std::round(x)); }

double capped_reciprocal(double scale, double dist) {
  if (dist == 0.0) return 1.0;
  return std::min(1.0, 1.0 / (scale * dist));
}

// x mod 1 in [-1/2, 1/2).
double centered(double x) {
  double t = x - std::floor(x);
  if (t >= 0.5) t -= 1.0;
  return t;
}

int f_delta_double(double theta, double Delta) {
  const double t = centered(theta);
  return (-Delta <= t && t < Delta) ? 1 : 0;
}

double psi_double(double t) { return t - std::floor(t) - 0.5; }

void check_gamma_window(const Rational& gamma) {
  if (gamma <= Rational(13, 14) || gamma >= Rational(1)) {
    throw GammaOutOfRange("gamma must lie in (13/14, 1), got " + gamma.to_string());
  }
}

}  // namespace

int ExperimentParams::bits() const {
  return std::max(reduction_bits(1, N), beta.frac_bits());
}

ExperimentParams derive_params_for_q(const AlphaSpec& alpha, const FixedReal& beta,
                                     const Rational& gamma, double C, double eps,
                                     std::int64_t q) {
  check_gamma_window(gamma);
  if (q < 1) throw RangeError("convergent denominator must be positive");
  if (!(C > 0.0) || !(eps >= 0.0)) throw RangeError("C must be > 0 and eps >= 0");
  const auto g_num = gamma.num();
  const auto g_den = gamma.den();

  ExperimentParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.C = C;
  p.eps = eps;
  p.conv = {0, q};
  const auto uq = static_cast<std::uint64_t>(q);
  p.N = floor_power(uq, Rational(29 * g_den, 55 * g_den - 28 * g_num));
  p.H = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(uq)));
  while (p.H * p.H > uq) --p.H;
  while ((p.H + 1) * (p.H + 1) <= uq) ++p.H;
  p.M = p.N == 1 ? 1 : floor_power(p.N, Rational(16 * g_den - 15 * g_num, 29 * g_den));
  p.theta = p.N == 1 ? 1 : floor_power(p.N, Rational(2 * g_num + 23 * g_den, 58 * g_den));

  const double g = gamma.to_double();
  p.delta_formula = C * std::pow(static_cast<double>(p.N), (13.0 - 14.0 * g) / 29.0 + eps);
  p.delta_clamped = p.delta_formula >= 0.5;
  p.Delta = p.delta_clamped ? kDeltaClamp : p.delta_formula;
  return p;
}

ExperimentParams derive_params(const AlphaSpec& alpha, const FixedReal& beta,
                               const Rational& gamma, double C, double eps,
                               const Convergent& conv) {
  check_gamma_window(gamma);
  if (conv.q < 1 || conv.a == 0 || std::gcd(conv.a, conv.q) != 1 ||
      !approximation_holds(alpha, 1, conv.a, conv.q, conv.q, true)) {
    throw RangeError(std::to_string(conv.a) + "/" + std::to_string(conv.q) +
                     " is not an admissible convergent of " + alpha.to_string());
  }
  ExperimentParams p = derive_params_for_q(alpha, beta, gamma, C, eps, conv.q);
  p.conv = conv;
  return p;
}

int f_delta(const FixedReal& theta, double Delta) {
  if (!(Delta > 0.0 && Delta < 0.5)) throw RangeError("F_Delta requires Delta in (0, 1/2)");
  const int bits = theta.frac_bits();
  FixedReal t = frac(theta);
  if (t >= FixedReal::from_ratio(1, 2, bits)) t -= FixedReal::from_integer(1, bits);
  const FixedReal d = FixedReal::from_double(Delta, bits);
  return (-d <= t && t < d) ? 1 : 0;
}

ExpansionError f_delta_expansion_error(double theta, double Delta, std::uint64_t H) {
  if (H < 1) throw RangeError("expansion requires H >= 1");
  CompensatedSum series;
  series.add(2.0 * Delta);
  for (std::uint64_t h = 1; h <= H; ++h) {
    const double hd = static_cast<double>(h);
    const double coeff = 2.0 * std::sin(kTwoPi * centered(hd * Delta)) / (std::numbers::pi * hd);
    series.add(coeff * std::cos(kTwoPi * centered(hd * theta)));
  }
  ExpansionError out;
  out.truncated = series.value();
  out.error = std::abs(f_delta(FixedReal::from_double(theta, 128), Delta) - out.truncated);
  const double hh = static_cast<double>(H);
  out.envelope = capped_reciprocal(hh, nearest_distance(theta + Delta)) +
                 capped_reciprocal(hh, nearest_distance(theta - Delta));
  return out;
}

ExpansionError psi_expansion_error(double t, std::uint64_t M) {
  if (M < 2) throw RangeError("sawtooth expansion requires M >= 2");
  CompensatedSum series;
  for (std::uint64_t m = 1; m <= M; ++m) {
    const double md = static_cast<double>(m);
    series.add(-std::sin(kTwoPi * centered(md * t)) / (std::numbers::pi * md));
  }
  ExpansionError out;
  out.truncated = series.value();
  out.error = std::abs(psi_double(t) - out.truncated);
  out.envelope = capped_reciprocal(static_cast<double>(M), nearest_distance(t));
  return out;
}

double f_delta_block_error(double theta, double Delta, std::uint64_t K) {
  if (K < 1) throw RangeError("block error requires K >= 1");
  const double target = f_delta_double(theta, Delta);
  CompensatedSum series, squares;
  series.add(2.0 * Delta);
  for (std::uint64_t h = 1; h < 2 * K; ++h) {
    const double hd = static_cast<double>(h);
    series.add(2.0 * std::sin(kTwoPi * centered(hd * Delta)) / (std::numbers::pi * hd) *
               std::cos(kTwoPi * centered(hd * theta)));
    if (h >= K) {
      const double e = target - series.value();
      squares.add(e * e);
    }
  }
  return std::sqrt(squares.value() / static_cast<double>(K));
}

double psi_block_error(double t, std::uint64_t K) {
  if (K < 1) throw RangeError("block error requires K >= 1");
  const double target = psi_double(t);
  CompensatedSum series, squares;
  for (std::uint64_t m = 1; m < 2 * K; ++m) {
    const double md = static_cast<double>(m);
    series.add(-std::sin(kTwoPi * centered(md * t)) / (std::numbers::pi * md));
    if (m >= K) {
      const double e = target - series.value();
      squares.add(e * e);
    }
  }
  return std::sqrt(squares.value() / static_cast<double>(K));
}

namespace {

struct PrimeTerm {
  int indicator = 0;
  double w1 = 0.0;
  double w2 = 0.0;
  double weight = 0.0;  // (F_Delta(alpha p^2 + beta) - 2 Delta) log p
};

}  // namespace

GammaSums gamma_sums(const ExperimentParams& params) {
  const auto primes = primes_up_to(params.N);
  const int bits = params.bits();
  const FixedReal a = params.alpha.evaluate(bits);
  const FixedReal b = params.beta.with_precision(bits);

  const auto terms = ordered_map<PrimeTerm>(primes.size(), [&](std::size_t i) {
    const std::uint64_t p = primes[i];
    const PowerPair pair = power_pair(p, params.gamma);
    const FixedReal smooth = pair.upper.value - pair.lower.value;
    const FixedReal saw = psi_of_negated(pair.upper) - psi_of_negated(pair.lower);
    const int ind = pair.indicator();
    if (smooth + saw != FixedReal::from_integer(ind, smooth.frac_bits())) {
      throw IdentityViolated("floor-difference split fails at p = " + std::to_string(p));
    }
    const mpz_class pz(static_cast<unsigned long>(p));
    const int F = f_delta(a * mpz_class(pz * pz) + b, params.Delta);
    const double weight = (F - 2.0 * params.Delta) * std::log(static_cast<double>(p));
    return PrimeTerm{ind, smooth.to_double(), saw.to_double(), weight};
  });

  GammaSums out;
  out.prime_count = primes.size();
  out.gamma = ordered_sum<double>(terms.size(), [&](std::size_t i) {
    return terms[i].indicator * terms[i].weight;
  });
  out.gamma1 = ordered_sum<double>(terms.size(), [&](std::size_t i) {
    return terms[i].w1 * terms[i].weight;
  });
  out.gamma2 = ordered_sum<double>(terms.size(), [&](std::size_t i) {
    return terms[i].w2 * terms[i].weight;
  });
  for (const auto& t : terms) out.ps_count += static_cast<std::uint64_t>(t.indicator);
  out.residual = std::abs(out.gamma - out.gamma1 - out.gamma2);
  const double tolerance = 1e-9 * static_cast<double>(std::max<std::uint64_t>(1, out.prime_count));
  if (out.residual > tolerance) {
    throw IdentityViolated("Gamma decomposition residual " + std::to_string(out.residual) +
                           " exceeds " + std::to_string(tolerance));
  }
  return out;
}

SearchResult solution_search(const ExperimentParams& params) {
  const auto primes = primes_up_to(params.N);
  const int bits = params.bits();
  const FixedReal a = params.alpha.evaluate(bits);
  const FixedReal b = params.beta.with_precision(bits);
  const FixedReal delta = FixedReal::from_double(params.Delta, bits);

  struct Candidate {
    bool ps = false;
    SolutionRecord record;
  };
  const auto found = ordered_map<Candidate>(primes.size(), [&](std::size_t i) {
    const std::uint64_t p = primes[i];
    const auto witness = is_ps_prime(p, params.gamma);
    if (!witness) return Candidate{};
    const mpz_class pz(static_cast<unsigned long>(p));
    FixedReal dist = dist_nearest(a * mpz_class(pz * pz) + b);
    const bool passes = dist < delta;
    return Candidate{true, {p, witness->n, std::move(dist), passes}};
  });

  SearchResult out;
  CompensatedSum ps_mass, pass_mass;
  for (const auto& c : found) {
    if (!c.ps) continue;
    ++out.ps_count;
    const double logp = std::log(static_cast<double>(c.record.p));
    ps_mass.add(logp);
    if (c.record.passes) {
      pass_mass.add(logp);
      out.solutions.push_back(c.record);
    }
  }
  out.ps_mass = ps_mass.value();
  out.pass_mass = pass_mass.value();
  out.expectation = 2.0 * params.Delta * out.ps_mass;
  out.ratio = out.expectation > 0.0 ? out.pass_mass / out.expectation : 0.0;
  return out;
}

std::vector<ScalingRow> scaling_report(const AlphaSpec& alpha, const FixedReal& beta,
                                       const Rational& gamma, double C, double eps,
                                       const std::vector<Convergent>& convergents) {
  if (convergents.size() < 2) {
    throw RangeError("scaling report needs at least two convergents");
  }
  const double g = gamma.to_double();
  std::vector<ScalingRow> rows;
  rows.reserve(convergents.size());
  for (const auto& conv : convergents) {
    const ExperimentParams p = derive_params(alpha, beta, gamma, C, eps, conv);
    const GammaSums sums = gamma_sums(p);
    const SearchResult search = solution_search(p);
    ScalingRow row;
    row.q = conv.q;
    row.N = p.N;
    row.Delta = p.Delta;
    row.delta_clamped = p.delta_clamped;
    row.H = p.H;
    row.M = p.M;
    row.theta = p.theta;
    row.abs_gamma = std::abs(sums.gamma);
    const double n = static_cast<double>(p.N);
    row.gamma_norm = row.abs_gamma / std::pow(n, (15.0 * g + 13.0) / 29.0);
    row.omega = omega_sum(alpha, p.beta, p.Delta, p.H, p.N);
    row.omega_ratio = row.omega / std::pow(n, (28.0 * g + 3.0) / 58.0);
    row.pass_count = search.solutions.size();
    row.expectation = search.expectation;
    row.ratio = search.ratio;
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScalingRow& x, const ScalingRow& y) { return x.q < y.q; });
  return rows;
}

}  // namespace pslab
