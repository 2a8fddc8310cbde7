#pragma once

// Continued-fraction convergents of alpha, Dirichlet approximants of
// alpha * h, and the audit of where their denominators land.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pslab/numerics.hpp"

namespace pslab {

// The real number alpha (or beta) driving an experiment.
//
// Grammar accepted by parse(), matched exactly:
//   sqrt:D        sqrt(D), D >= 2 and not a perfect square
//   dec:<digits>  -?[0-9]+(\.[0-9]+)?, the exact rational it denotes
//   rat:<a>/<b>   a/b with b > 0
class AlphaSpec {
 public:
  enum class Kind { surd, decimal, rational };

  static AlphaSpec parse(std::string_view text);
  static AlphaSpec surd(std::int64_t d);
  static AlphaSpec rational(std::int64_t a, std::int64_t b);
  static AlphaSpec decimal(std::string_view digits);

  Kind kind() const noexcept { return kind_; }
  bool is_irrational() const noexcept { return kind_ == Kind::surd; }

  // alpha + k. Periodicity checks use this; the CLI grammar has no spelling
  // for it.
  AlphaSpec plus_integer(std::int64_t k) const;

  // alpha rounded toward -inf at `bits` fractional bits (error < 2^-bits).
  // A decimal literal must carry at least bits/3 fractional digits, else
  // PrecisionExhausted.
  FixedReal evaluate(int bits) const;

  // Exact value for the rational kinds.
  std::optional<mpq_class> exact_value() const;

  std::string to_string() const;

  // Partial quotients of h * alpha, generated exactly. Ends after the last
  // quotient for the rational kinds; never ends for a surd.
  class QuotientStream {
   public:
    std::optional<mpz_class> next();

   private:
    friend class AlphaSpec;
    Kind kind_ = Kind::surd;
    // surd: sqrt(radicand) + offset, complete quotient (m + sqrt(radicand)) / d
    mpz_class radicand_, root_, m_, d_, offset_;
    bool first_ = true;
    // rational: num_ / den_
    mpz_class num_, den_;
    bool done_ = false;
  };
  QuotientStream quotients(std::int64_t h = 1) const;

 private:
  Kind kind_ = Kind::rational;
  std::int64_t radicand_ = 0;
  std::int64_t shift_ = 0;
  mpq_class value_;          // rational kinds
  std::size_t frac_digits_ = 0;  // decimal kind
  std::string text_;
};

struct Convergent {
  std::int64_t a = 0;
  std::int64_t q = 1;
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

struct DirichletApproximant {
  std::int64_t h = 1;
  std::int64_t a_h = 0;
  std::int64_t q_h = 1;
  friend bool operator==(const DirichletApproximant&,
                         const DirichletApproximant&) = default;
};

// First `count` continued-fraction convergents a/q with a != 0, increasing q.
// Throws RationalAlpha if the expansion ends first.
std::vector<Convergent> convergents(const AlphaSpec& alpha, std::size_t count);

// Convergent of alpha whose denominator equals q, if any (scans until the
// denominators pass q).
std::optional<Convergent> convergent_with_denominator(const AlphaSpec& alpha,
                                                      std::int64_t q);

// The convergent of h * alpha with the largest denominator <= q^2. It obeys
// |h alpha - a_h/q_h| <= 1/(q_h q^2), which is re-verified before returning.
DirichletApproximant dirichlet_approx(const AlphaSpec& alpha, std::int64_t h,
                                      std::int64_t q);

// Decides |h alpha - a/den| < 1/(den * bound) (strict) or <= (non-strict).
// Exact for the rational kinds; for a surd, evaluated at `bits` fractional
// bits (0 picks a default) and PrecisionExhausted when the error budget
// straddles the bound.
bool approximation_holds(const AlphaSpec& alpha, std::int64_t h, std::int64_t a,
                         std::int64_t den, std::int64_t bound, bool strict,
                         int bits = 0);

struct QhAuditRow {
  std::int64_t h = 0;
  std::int64_t a_h = 0;
  std::int64_t q_h = 0;
  bool in_range = false;  // q^(1/3) < q_h <= q^2
};

struct QhAudit {
  std::vector<QhAuditRow> rows;
  std::size_t violations = 0;
};

QhAudit qh_range_audit(const AlphaSpec& alpha, const Convergent& conv,
                       std::int64_t H);

}  // namespace pslab
