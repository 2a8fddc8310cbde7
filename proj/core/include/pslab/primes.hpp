#pragma once

// Sieving, the arithmetic functions Lambda, mu, tau, and Piatetski-Shapiro
// membership through the floor-difference indicator
// [-p^gamma] - [-(p+1)^gamma].

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pslab/numerics.hpp"
#include "pslab/rational.hpp"

namespace pslab {

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;

// Primality and factored arithmetic functions on the interval (lo, hi].
class SieveSegment {
 public:
  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  bool contains(std::uint64_t n) const noexcept { return n > lo_ && n <= hi_; }

  bool is_prime(std::uint64_t n) const { return prime_[index(n)] != 0; }
  double von_mangoldt(std::uint64_t n) const { return lambda_[index(n)]; }
  int mobius(std::uint64_t n) const { return mu_[index(n)]; }
  std::uint32_t divisor_count(std::uint64_t n) const { return tau_[index(n)]; }
  std::uint64_t smallest_prime_factor(std::uint64_t n) const { return spf_[index(n)]; }

  std::vector<std::uint64_t> primes() const;

 private:
  friend SieveSegment sieve(std::uint64_t, std::uint64_t, std::uint64_t);
  std::size_t index(std::uint64_t n) const;

  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::vector<std::uint8_t> prime_;
  std::vector<double> lambda_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> tau_;
  std::vector<std::uint64_t> spf_;
};

// Throws RangeError unless 1 <= lo < hi, SegmentTooLarge when
// hi - lo > max_segment.
SieveSegment sieve(std::uint64_t lo, std::uint64_t hi,
                   std::uint64_t max_segment = kDefaultSegmentSize);

// The same functions on [1, limit] from a single linear sieve over a
// smallest-prime-factor table.
class ArithmeticTable {
 public:
  explicit ArithmeticTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }
  double von_mangoldt(std::uint64_t n) const { return lambda_[n]; }
  int mobius(std::uint64_t n) const { return mu_[n]; }
  std::uint32_t divisor_count(std::uint64_t n) const { return tau_[n]; }
  std::uint64_t smallest_prime_factor(std::uint64_t n) const { return spf_[n]; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> spf_;
  std::vector<double> lambda_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> tau_;
};

// All primes <= limit, ascending. Segments are sieved independently and
// concatenated by ascending lo.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// p^gamma and (p+1)^gamma with certified floors.
struct PowerPair {
  std::uint64_t p = 0;
  PowFloor lower;  // p^gamma
  PowFloor upper;  // (p+1)^gamma

  // [-p^gamma] - [-(p+1)^gamma] = ceil((p+1)^gamma) - ceil(p^gamma).
  int indicator() const;
};
PowerPair power_pair(std::uint64_t p, const Rational& gamma, int bits = 128);

// p = [n^(1/gamma)], certified by p^gamma <= n < (p+1)^gamma.
struct PsWitness {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  friend bool operator==(const PsWitness&, const PsWitness&) = default;
};

// The unique n in [p^gamma, (p+1)^gamma), if any. gamma in (0, 1).
std::optional<PsWitness> is_ps_prime(std::uint64_t p, const Rational& gamma,
                                     int bits = 128);

enum class AmbiguityPolicy { strict, skip_and_log };

struct PsCount {
  std::uint64_t count = 0;
  // count / (X^gamma / log X)
  double ratio = 0.0;
  std::vector<std::uint64_t> ambiguous;
};

PsCount ps_count(std::uint64_t X, const Rational& gamma,
                 AmbiguityPolicy policy = AmbiguityPolicy::strict);

// Witnesses for every Piatetski-Shapiro prime p <= X, ascending.
std::vector<PsWitness> ps_primes(std::uint64_t X, const Rational& gamma);

}  // namespace pslab
