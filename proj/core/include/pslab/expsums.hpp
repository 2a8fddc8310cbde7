#pragma once

// Exponential sums over primes and the inequality checkers that measure
// each "<<" claim as a ratio |sum| / bound (epsilon = 0, implied constant 1).

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "pslab/diophantine.hpp"
#include "pslab/numerics.hpp"
#include "pslab/phase.hpp"
#include "pslab/rational.hpp"

namespace pslab {

struct BoundReport {
  double value = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // value / bound, 0 when bound is 0
  std::map<std::string, double> meta;

  static BoundReport make(double value, double bound,
                          std::map<std::string, double> meta = {});
};

// S(y) = sum_{p <= y} e(alpha h p^2) log p.
std::complex<double> prime_phase_sum(const AlphaSpec& alpha, std::int64_t h,
                                     std::uint64_t y);

// |S(N)| against N (1/q_h + N^-1/2 + q_h/N^2)^(1/4), where q_h comes from a
// Dirichlet approximant of alpha h.
BoundReport ghosh_bound_report(const AlphaSpec& alpha, std::int64_t h,
                               std::uint64_t N,
                               const DirichletApproximant& approx);

// Sigma = sum_{p <= N} (psi(-(p+1)^gamma) - psi(-p^gamma)) e(alpha h p^2) log p.
std::complex<double> sigma_sum(const AlphaSpec& alpha, std::int64_t h,
                               const Rational& gamma, std::uint64_t N);

struct WeightedPartialSums {
  // sum_{h <= u} | sum_{p <= N} p^(gamma-1) e(alpha h p^2) log p |
  double frak_s = 0.0;
  // sum_{h <= u} | Sigma(h) |
  double g = 0.0;
};
WeightedPartialSums weighted_partial_sums(const AlphaSpec& alpha,
                                          const Rational& gamma,
                                          std::uint64_t N, double u);

// Omega = sum_{n <= N} min(1, 1/(H ||alpha n^2 + beta + Delta||))
//                    + min(1, 1/(H ||alpha n^2 + beta - Delta||)).
// ||.|| = 0 contributes 1.
double omega_sum(const AlphaSpec& alpha, const FixedReal& beta, double delta,
                 std::uint64_t H, std::uint64_t N);

// Omega against N q^-1/2 + N^1/2 + N/H + H^-1/2 q^1/2.
BoundReport omega_bound_report(const AlphaSpec& alpha, const FixedReal& beta,
                               double delta, std::uint64_t H, std::uint64_t N,
                               std::int64_t q);

// Maximum admissible max|f'''| / min|f'''| on [a, b].
inline constexpr double kThirdDerivativeSpread = 16.0;

// |sum_{a < n <= b} e(f(n))| against (b - a) lambda^(1/6) + lambda^(-1/3),
// lambda = max |f'''| on [a, b]. Throws HypothesisViolated unless f''' keeps
// one sign on [a, b] with max/min spread <= 16.
BoundReport sargos_check(const PhaseSpec& phase, std::int64_t a, std::int64_t b);

struct WvdcResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

// seq[i] = a(a0 + 1 + i) on (a0, b]; only the length matters. Computes
// lhs = |sum a(n)|^2 and
// rhs = (1 + (b-a)/Q) sum_{|r| <= Q} (1 - |r|/Q) sum_n a(n+r) conj(a(n)),
// and throws InequalityViolated if lhs > rhs + 1e-9 rhs.
WvdcResult wvdc_check(std::span<const std::complex<double>> seq, std::int64_t Q);

// sum_{D1 < d <= D2} e(f(d, l + r) - f(d, l)) with
// D1 = max{D, N1/l, N1/(l+r)}, D2 = min{2D, N2/l, N2/(l+r)}.
std::complex<double> differenced_phase_sum(const PhaseSpec& phase, std::int64_t l,
                                           std::int64_t r, std::int64_t D,
                                           std::int64_t N1, std::int64_t N2);

}  // namespace pslab
