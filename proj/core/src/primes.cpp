#include "pslab/primes.hpp"

#include <cmath>
#include <mutex>

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"

namespace pslab {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint8_t> composite(limit + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

void check_gamma_below_one(const Rational& gamma) {
  if (gamma <= Rational(0) || gamma >= Rational(1)) {
    throw GammaOutOfRange("gamma must lie in (0, 1), got " + gamma.to_string());
  }
}

}  // namespace

std::size_t SieveSegment::index(std::uint64_t n) const {
  if (!contains(n)) {
    throw RangeError(std::to_string(n) + " outside segment (" + std::to_string(lo_) +
                     ", " + std::to_string(hi_) + "]");
  }
  return static_cast<std::size_t>(n - lo_ - 1);
}

std::vector<std::uint64_t> SieveSegment::primes() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < prime_.size(); ++i) {
    if (prime_[i]) out.push_back(lo_ + 1 + i);
  }
  return out;
}

SieveSegment sieve(std::uint64_t lo, std::uint64_t hi, std::uint64_t max_segment) {
  if (lo < 1 || lo >= hi) throw RangeError("sieve requires 1 <= lo < hi");
  if (hi - lo > max_segment) {
    throw SegmentTooLarge("segment (" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] exceeds " + std::to_string(max_segment));
  }
  const auto len = static_cast<std::size_t>(hi - lo);
  SieveSegment s;
  s.lo_ = lo;
  s.hi_ = hi;
  s.prime_.assign(len, 0);
  s.lambda_.assign(len, 0.0);
  s.mu_.assign(len, 1);
  s.tau_.assign(len, 1);
  s.spf_.assign(len, 0);

  std::vector<std::uint64_t> rem(len);
  std::vector<std::uint8_t> distinct(len, 0);
  std::vector<std::uint64_t> last_prime(len, 0);
  for (std::size_t i = 0; i < len; ++i) rem[i] = lo + 1 + i;

  for (const std::uint64_t p : small_primes(isqrt_u64(hi))) {
    for (std::uint64_t m = (lo / p + 1) * p; m <= hi; m += p) {
      const auto i = static_cast<std::size_t>(m - lo - 1);
      std::uint32_t e = 0;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        ++e;
      }
      s.tau_[i] *= e + 1;
      s.mu_[i] = e >= 2 ? 0 : static_cast<std::int8_t>(-s.mu_[i]);
      if (s.spf_[i] == 0) s.spf_[i] = p;
      ++distinct[i];
      last_prime[i] = p;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t n = lo + 1 + i;
    if (rem[i] > 1) {
      s.tau_[i] *= 2;
      s.mu_[i] = static_cast<std::int8_t>(-s.mu_[i]);
      if (s.spf_[i] == 0) s.spf_[i] = rem[i];
      ++distinct[i];
      last_prime[i] = rem[i];
    }
    if (n == 1) s.spf_[i] = 1;
    if (distinct[i] == 1) {
      s.lambda_[i] = std::log(static_cast<double>(last_prime[i]));
      s.prime_[i] = s.tau_[i] == 2 ? 1 : 0;
    }
  }
  return s;
}

ArithmeticTable::ArithmeticTable(std::uint64_t limit)
    : limit_(limit),
      spf_(limit + 1, 0),
      lambda_(limit + 1, 0.0),
      mu_(limit + 1, 0),
      tau_(limit + 1, 0) {
  std::vector<std::uint32_t> exponent(limit + 1, 0);
  std::vector<std::uint64_t> power_base(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  if (limit >= 1) {
    spf_[1] = 1;
    mu_[1] = 1;
    tau_[1] = 1;
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes.push_back(i);
      mu_[i] = -1;
      tau_[i] = 2;
      exponent[i] = 1;
      power_base[i] = i;
    }
    for (const std::uint64_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      const std::uint64_t m = i * p;
      spf_[m] = p;
      if (p == spf_[i]) {
        mu_[m] = 0;
        exponent[m] = exponent[i] + 1;
        tau_[m] = tau_[i] / (exponent[i] + 1) * (exponent[i] + 2);
        power_base[m] = power_base[i] == p ? p : 0;
        break;
      }
      mu_[m] = static_cast<std::int8_t>(-mu_[i]);
      exponent[m] = 1;
      tau_[m] = tau_[i] * 2;
      power_base[m] = 0;
    }
    if (power_base[i] != 0) lambda_[i] = std::log(static_cast<double>(power_base[i]));
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  if (limit < 2) return {};
  const std::uint64_t seg = 1u << 20;
  const std::uint64_t segments = (limit + seg - 1) / seg;
  const auto base = small_primes(isqrt_u64(limit));
  std::vector<std::vector<std::uint64_t>> parts(segments);
  run_chunks(segments, [&](std::size_t k) {
    const std::uint64_t lo = k * seg;  // covers (lo, hi]
    const std::uint64_t hi = std::min(limit, lo + seg);
    std::vector<std::uint8_t> composite(hi - lo, 0);
    for (const std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo / p + 1) * p);
      for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo - 1] = 1;
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo + 1, 2); n <= hi; ++n) {
      if (!composite[n - lo - 1]) parts[k].push_back(n);
    }
  });
  std::vector<std::uint64_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

int PowerPair::indicator() const {
  const mpz_class diff = upper.ceil() - lower.ceil();
  return static_cast<int>(diff.get_si());
}

PowerPair power_pair(std::uint64_t p, const Rational& gamma, int bits) {
  return {p, floor_pow(p, gamma, bits), floor_pow(p + 1, gamma, bits)};
}

std::optional<PsWitness> is_ps_prime(std::uint64_t p, const Rational& gamma, int bits) {
  if (p < 2) throw RangeError("is_ps_prime requires p >= 2");
  check_gamma_below_one(gamma);
  const PowerPair pair = power_pair(p, gamma, bits);
  if (pair.indicator() == 0) return std::nullopt;
  return PsWitness{p, pair.lower.ceil().get_ui()};
}

PsCount ps_count(std::uint64_t X, const Rational& gamma, AmbiguityPolicy policy) {
  check_gamma_below_one(gamma);
  const auto primes = primes_up_to(X);
  // 1 = witness, 0 = none, -1 = ambiguous (skip-and-log only)
  const auto flags = ordered_map<int>(primes.size(), [&](std::size_t i) {
    try {
      return is_ps_prime(primes[i], gamma) ? 1 : 0;
    } catch (const AmbiguousFloor&) {
      if (policy == AmbiguityPolicy::strict) throw;
      return -1;
    }
  });
  PsCount out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i] == 1) ++out.count;
    if (flags[i] == -1) out.ambiguous.push_back(primes[i]);
  }
  if (X >= 2) {
    const double x = static_cast<double>(X);
    out.ratio = static_cast<double>(out.count) / (std::pow(x, gamma.to_double()) / std::log(x));
  }
  return out;
}

std::vector<PsWitness> ps_primes(std::uint64_t X, const Rational& gamma) {
  check_gamma_below_one(gamma);
  const auto primes = primes_up_to(X);
  const auto found = ordered_map<std::optional<PsWitness>>(
      primes.size(), [&](std::size_t i) { return is_ps_prime(primes[i], gamma); });
  std::vector<PsWitness> out;
  for (const auto& w : found) {
    if (w) out.push_back(*w);
  }
  return out;
}

}  // namespace pslab
