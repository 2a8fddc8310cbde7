#pragma once

// The experiment driver: parameter cascade from a convergent denominator q,
// the indicator F_Delta and its Fourier expansion, the sawtooth expansion,
// the main sum Gamma = Gamma1 + Gamma2, the search for primes with
// ||alpha p^2 + beta|| < Delta, and reports across several convergents.

#include <cstdint>
#include <string>
#include <vector>

#include "pslab/diophantine.hpp"
#include "pslab/numerics.hpp"
#include "pslab/rational.hpp"

namespace pslab {

// Largest Delta used when the formula reaches 1/2.
inline constexpr double kDeltaClamp = 0.499999;

struct ExperimentParams {
  AlphaSpec alpha = AlphaSpec::rational(0, 1);
  FixedReal beta;
  Rational gamma;
  double C = 1.0;
  double eps = 0.0;
  Convergent conv;
  std::uint64_t N = 0;        // [q^(29/(55-28 gamma))]
  double delta_formula = 0;   // C N^((13-14 gamma)/29 + eps), unclamped
  double Delta = 0;           // delta_formula, clamped below 1/2
  bool delta_clamped = false;
  std::uint64_t H = 0;        // [q^(1/2)]
  std::uint64_t M = 0;        // [N^((16-15 gamma)/29)]
  std::uint64_t theta = 0;    // [N^((2 gamma+23)/58)]

  // Fractional bits used for alpha p^2 + beta with p <= N.
  int bits() const;
};

// Throws GammaOutOfRange unless 13/14 < gamma < 1. The convergent must
// satisfy gcd(a, q) = 1, a != 0 and |alpha - a/q| < 1/q^2 (RangeError
// otherwise).
ExperimentParams derive_params(const AlphaSpec& alpha, const FixedReal& beta,
                               const Rational& gamma, double C, double eps,
                               const Convergent& conv);

// Same cascade from q alone, with no convergent check; used when alpha is
// rational and has no admissible convergent.
ExperimentParams derive_params_for_q(const AlphaSpec& alpha, const FixedReal& beta,
                                     const Rational& gamma, double C, double eps,
                                     std::int64_t q);

// Period-one indicator: 1 when -Delta <= theta < Delta (mod 1), else 0.
int f_delta(const FixedReal& theta, double Delta);

struct ExpansionError {
  double truncated = 0.0;
  double error = 0.0;
  double envelope = 0.0;
  double ratio() const { return envelope > 0.0 ? error / envelope : 0.0; }
};

// truncated = 2 Delta + sum_{1 <= |h| <= H} sin(2 pi h Delta)/(pi h) e(h theta)
// envelope  = min(1, 1/(H ||theta + Delta||)) + min(1, 1/(H ||theta - Delta||))
ExpansionError f_delta_expansion_error(double theta, double Delta, std::uint64_t H);

// truncated = -sum_{1 <= |m| <= M} e(m t)/(2 pi i m)
// envelope  = min(1, 1/(M ||t||))
ExpansionError psi_expansion_error(double t, std::uint64_t M);

// Root-mean-square truncation error over the dyadic block [K, 2K) of
// truncation lengths. Doubling K should roughly halve it away from the
// jump points.
double f_delta_block_error(double theta, double Delta, std::uint64_t K);
double psi_block_error(double t, std::uint64_t K);

struct GammaSums {
  double gamma = 0.0;      // Gamma, via the PS indicator
  double gamma1 = 0.0;     // weight (p+1)^gamma - p^gamma
  double gamma2 = 0.0;     // weight psi(-(p+1)^gamma) - psi(-p^gamma)
  double residual = 0.0;   // |Gamma - Gamma1 - Gamma2|
  std::uint64_t prime_count = 0;
  std::uint64_t ps_count = 0;
};

// Throws IdentityViolated if the residual exceeds 1e-9 pi(N).
GammaSums gamma_sums(const ExperimentParams& params);

struct SolutionRecord {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  FixedReal dist;  // ||alpha p^2 + beta||
  bool passes = false;
};

struct SearchResult {
  std::vector<SolutionRecord> solutions;  // passing PS primes, ascending p
  std::uint64_t ps_count = 0;
  double ps_mass = 0.0;       // sum log p over PS primes p <= N
  double pass_mass = 0.0;     // sum log p over passing PS primes
  double expectation = 0.0;   // 2 Delta ps_mass
  double ratio = 0.0;         // pass_mass / expectation
};

SearchResult solution_search(const ExperimentParams& params);

struct ScalingRow {
  std::int64_t q = 0;
  std::uint64_t N = 0;
  double Delta = 0.0;
  bool delta_clamped = false;
  std::uint64_t H = 0;
  std::uint64_t M = 0;
  std::uint64_t theta = 0;
  double abs_gamma = 0.0;
  double gamma_norm = 0.0;    // |Gamma| / N^((15 gamma + 13)/29)
  double omega = 0.0;
  double omega_ratio = 0.0;   // Omega / N^((28 gamma + 3)/58)
  std::uint64_t pass_count = 0;
  double expectation = 0.0;
  double ratio = 0.0;
};

// One row per convergent, ascending q. Requires at least two convergents.
std::vector<ScalingRow> scaling_report(const AlphaSpec& alpha, const FixedReal& beta,
                                       const Rational& gamma, double C, double eps,
                                       const std::vector<Convergent>& convergents);

}  // namespace pslab
