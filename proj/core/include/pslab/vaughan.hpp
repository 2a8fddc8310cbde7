#pragma once

// Vaughan's identity with both cutoffs equal to theta:
//
//   c(d) = sum_{rs = d, r <= theta, s <= theta} mu(r) Lambda(s)
//   a(d) = sum_{r | d, r <= theta} mu(r)
//
// For n > theta,
//   Lambda(n) = sum_{d | n, d <= theta} mu(d) log(n/d) - sum_{d | n} c(d)
//               - sum_{dl = n, d > theta, l > theta} a(d) Lambda(l),
// which splits Phi(N1, N2) = sum_{N1 < n <= N2} Lambda(n) e(f(n, 1)) into
// Theta1 - Theta2 - Theta3 - Theta4.

#include <complex>
#include <cstdint>
#include <vector>

#include "pslab/phase.hpp"
#include "pslab/primes.hpp"

namespace pslab {

class VaughanCoeffs {
 public:
  std::uint64_t theta() const noexcept { return theta_; }
  std::uint64_t d_max() const noexcept { return a_.empty() ? 0 : a_.size() - 1; }

  // c(d), zero for d > theta^2.
  double c(std::uint64_t d) const { return d < c_.size() ? c_[d] : 0.0; }
  std::int64_t a(std::uint64_t d) const { return a_.at(d); }

 private:
  friend VaughanCoeffs build_coeffs(std::uint64_t, std::uint64_t);
  std::uint64_t theta_ = 0;
  std::vector<double> c_;        // index d <= theta^2
  std::vector<std::int64_t> a_;  // index d <= d_max
};

// Throws BoundViolated if |c(d)| <= log d or |a(d)| <= tau(d) fails anywhere
// in the table.
VaughanCoeffs build_coeffs(std::uint64_t theta, std::uint64_t d_max);

struct ThetaSums {
  std::complex<double> theta1, theta2, theta3, theta4;
  std::complex<double> combined() const { return theta1 - theta2 - theta3 - theta4; }
};

// Requires theta >= 2 and theta <= N1 < N2 (RangeError otherwise).
ThetaSums theta_sums(std::int64_t N1, std::int64_t N2, std::uint64_t theta,
                     const PhaseSpec& phase);

struct IdentityCheck {
  ThetaSums thetas;
  std::complex<double> phi_direct;
  double residual = 0.0;
};

// Per-term tolerance of the identity check.
inline constexpr double kIdentityTolerance = 1e-9;

// Phi computed directly and through the four sums. N1 >= N2 gives empty sums
// and a zero residual. Throws IdentityViolated when the residual exceeds
// 1e-9 (N2 - N1 + 1).
IdentityCheck identity_check(std::int64_t N1, std::int64_t N2, std::uint64_t theta,
                             const PhaseSpec& phase);

double identity_residual(std::int64_t N1, std::int64_t N2, std::uint64_t theta,
                         const PhaseSpec& phase);

// Right-hand side of the pointwise identity for a single n > theta, using a
// table covering n.
double vaughan_lambda(std::uint64_t n, const VaughanCoeffs& coeffs,
                      const ArithmeticTable& table);

}  // namespace pslab
