#pragma once

// Fixed-point reals and the elementary functions of the notation:
// [x], {x}, ||x||, psi(t) = {t} - 1/2, e(x) = exp(2 pi i x), and n^gamma.

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "pslab/rational.hpp"

namespace pslab {

// value = mantissa * 2^-frac_bits with frac_bits >= 64.
//
// Addition and subtraction of operands carrying the same frac_bits are exact.
// Multiplication rounds to nearest, ties to even, at the common precision.
// Mixed-precision operands are first widened to the larger precision, which
// is exact.
class FixedReal {
 public:
  static constexpr int kMinBits = 64;

  FixedReal() : bits_(kMinBits) {}
  FixedReal(mpz_class mantissa, int frac_bits);

  static FixedReal from_integer(const mpz_class& n, int bits);
  static FixedReal from_integer(std::int64_t n, int bits) {
    return from_integer(mpz_class(static_cast<long>(n)), bits);
  }
  // Nearest representable value to num/den (ties to even). den must be > 0.
  static FixedReal from_ratio(const mpz_class& num, const mpz_class& den,
                              int bits);
  // Exact binary value of d rounded to `bits`; d must be finite.
  static FixedReal from_double(double d, int bits);
  // Decimal literal "-?[0-9]+(\.[0-9]+)?", treated as the exact rational it
  // denotes and rounded to `bits`.
  static FixedReal from_decimal(std::string_view text, int bits);

  const mpz_class& mantissa() const noexcept { return mantissa_; }
  int frac_bits() const noexcept { return bits_; }

  // Rounds to nearest (ties to even) when narrowing; exact when widening.
  FixedReal with_precision(int bits) const;

  mpz_class floor() const;
  mpz_class ceil() const;
  bool is_integer() const;
  int sign() const { return sgn(mantissa_); }

  double to_double() const;
  long double to_long_double() const;
  // Decimal rendering truncated toward zero after `digits` fractional digits.
  std::string to_string(int digits = 20) const;

  FixedReal operator-() const { return FixedReal(-mantissa_, bits_); }
  FixedReal& operator+=(const FixedReal& rhs);
  FixedReal& operator-=(const FixedReal& rhs);
  FixedReal& operator*=(const FixedReal& rhs);
  // Exact scaling by an integer.
  FixedReal& operator*=(const mpz_class& k);

  friend FixedReal operator+(FixedReal a, const FixedReal& b) { return a += b; }
  friend FixedReal operator-(FixedReal a, const FixedReal& b) { return a -= b; }
  friend FixedReal operator*(FixedReal a, const FixedReal& b) { return a *= b; }
  friend FixedReal operator*(FixedReal a, const mpz_class& k) { return a *= k; }
  friend FixedReal operator*(const mpz_class& k, FixedReal a) { return a *= k; }

  friend bool operator==(const FixedReal& a, const FixedReal& b);
  friend std::strong_ordering operator<=>(const FixedReal& a,
                                          const FixedReal& b);

 private:
  mpz_class mantissa_;
  int bits_;
};

// Shifts right by `shift` bits rounding to nearest, ties to even.
mpz_class round_shift(const mpz_class& value, unsigned long shift);

// {x} in [0, 1).
FixedReal frac(const FixedReal& x);
// ||x|| in [0, 1/2].
FixedReal dist_nearest(const FixedReal& x);
// {t} - 1/2 in [-1/2, 1/2).
FixedReal psi(const FixedReal& t);

// A point on the unit circle. Construction normalizes so that
// | |z| - 1 | <= 1e-12.
class UnitComplex {
 public:
  UnitComplex() = default;
  // exp(2 pi i t) for t in [0, 1).
  static UnitComplex from_turns(double t);

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  std::complex<double> value() const noexcept { return {re_, im_}; }
  UnitComplex conj() const noexcept { return {re_, -im_}; }
  friend UnitComplex operator*(const UnitComplex& a, const UnitComplex& b);

 private:
  UnitComplex(double re, double im);
  double re_ = 1.0;
  double im_ = 0.0;
};

// e(x) = exp(2 pi i x) after exact reduction of x modulo 1. Absolute error
// at most 1e-12.
UnitComplex e_of(const FixedReal& x);

struct PowResult {
  FixedReal value;
  // Set when value lies within 2^-(P-32) of an integer.
  bool near_integer = false;
};

// n^gamma within 2^-P, for n >= 1, gamma in (0, 2) and P >= 64.
PowResult pow_real(std::uint64_t n, const Rational& gamma, int bits);

// n^gamma together with its certified floor. Precision doubles from `bits`
// up to 8 * bits while the value sits inside the 32-bit integrality guard;
// an exactly integral power (n a perfect den(gamma)-th power) resolves
// immediately. Throws AmbiguousFloor if the guard never clears.
struct PowFloor {
  FixedReal value;
  mpz_class floor;
  bool exact = false;
  int bits_used = 0;

  mpz_class ceil() const { return exact ? floor : mpz_class(floor + 1); }
};
PowFloor floor_pow(std::uint64_t n, const Rational& gamma, int bits);

// psi(-x) computed from a certified floor, so that the sawtooth jump is
// resolved exactly: {-x} = ceil(x) - x.
FixedReal psi_of_negated(const PowFloor& x);

// Fractional bits needed so that alpha * h * n^2 for h <= h_max and
// n <= n_max + 1 keeps 64 correct bits after reduction mod 1.
int reduction_bits(std::uint64_t h_max, std::uint64_t n_max);

// Bit length of |n|, 0 for n = 0.
int bit_length(const mpz_class& n);

}  // namespace pslab
