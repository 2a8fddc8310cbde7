#include "pslab/numerics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pslab/errors.hpp"

namespace pslab {

namespace {

void check_bits(int bits) {
  if (bits < FixedReal::kMinBits) {
    throw RangeError("fixed-point precision below 64 fractional bits");
  }
}

mpz_class pow2(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

mpz_class shift_left(const mpz_class& v, unsigned long k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

mpz_class from_u64(std::uint64_t n) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_class(static_cast<unsigned long>(n));
}

// Minimal RAII holder for an mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

int bit_length(const mpz_class& n) {
  if (n == 0) return 0;
  return static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

mpz_class round_shift(const mpz_class& value, unsigned long shift) {
  if (shift == 0) return value;
  mpz_class q, r;
  mpz_fdiv_q_2exp(q.get_mpz_t(), value.get_mpz_t(), shift);
  mpz_fdiv_r_2exp(r.get_mpz_t(), value.get_mpz_t(), shift);
  const mpz_class half = pow2(shift - 1);
  const int c = cmp(r, half);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  return q;
}

FixedReal::FixedReal(mpz_class mantissa, int frac_bits)
    : mantissa_(std::move(mantissa)), bits_(frac_bits) {
  check_bits(frac_bits);
}

FixedReal FixedReal::from_integer(const mpz_class& n, int bits) {
  check_bits(bits);
  return FixedReal(shift_left(n, static_cast<unsigned long>(bits)), bits);
}

FixedReal FixedReal::from_ratio(const mpz_class& num, const mpz_class& den,
                                int bits) {
  check_bits(bits);
  if (den <= 0) throw RangeError("from_ratio requires a positive denominator");
  const mpz_class scaled = shift_left(num, static_cast<unsigned long>(bits));
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(),
              den.get_mpz_t());
  const int c = cmp(mpz_class(2 * r), den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  return FixedReal(q, bits);
}

FixedReal FixedReal::from_double(double d, int bits) {
  check_bits(bits);
  if (!std::isfinite(d)) throw RangeError("from_double on a non-finite value");
  if (d == 0.0) return FixedReal(mpz_class(0), bits);
  int exp = 0;
  const double m = std::frexp(d, &exp);  // d = m * 2^exp, 0.5 <= |m| < 1
  const auto mant = static_cast<long>(std::ldexp(m, 53));
  const int shift = exp - 53 + bits;
  mpz_class v(mant);
  if (shift >= 0) return FixedReal(shift_left(v, shift), bits);
  return FixedReal(round_shift(v, static_cast<unsigned long>(-shift)), bits);
}

FixedReal FixedReal::from_decimal(std::string_view text, int bits) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  const std::string_view int_part = body.substr(0, dot);
  const std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  const auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };
  if (!all_digits(int_part) ||
      (dot != std::string_view::npos && !all_digits(frac_part))) {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
  mpz_class num(std::string(int_part) + std::string(frac_part), 10);
  if (negative) num = -num;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
  return from_ratio(num, den, bits);
}

FixedReal FixedReal::with_precision(int bits) const {
  check_bits(bits);
  if (bits == bits_) return *this;
  if (bits > bits_) {
    return FixedReal(shift_left(mantissa_, static_cast<unsigned long>(bits - bits_)),
                     bits);
  }
  return FixedReal(round_shift(mantissa_, static_cast<unsigned long>(bits_ - bits)),
                   bits);
}

mpz_class FixedReal::floor() const {
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(), bits_);
  return q;
}

mpz_class FixedReal::ceil() const {
  mpz_class q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(), bits_);
  return q;
}

bool FixedReal::is_integer() const {
  return mpz_divisible_2exp_p(mantissa_.get_mpz_t(), bits_) != 0;
}

double FixedReal::to_double() const {
  if (mantissa_ == 0) return 0.0;
  const int len = bit_length(mantissa_);
  if (len <= 53) return std::ldexp(mantissa_.get_d(), -bits_);
  const mpz_class top = round_shift(mantissa_, static_cast<unsigned long>(len - 53));
  return std::ldexp(top.get_d(), len - 53 - bits_);
}

long double FixedReal::to_long_double() const {
  if (mantissa_ == 0) return 0.0L;
  const int len = bit_length(mantissa_);
  const int drop = std::max(0, len - 64);
  mpz_class top = round_shift(abs(mantissa_), static_cast<unsigned long>(drop));
  // round_shift may carry into bit 65; one extra halving keeps it in range.
  int extra = 0;
  if (bit_length(top) > 64) {
    top >>= 1;
    extra = 1;
  }
  std::uint64_t raw = 0;
  mpz_export(&raw, nullptr, -1, sizeof(raw), 0, 0, top.get_mpz_t());
  long double v = std::ldexp(static_cast<long double>(raw), drop + extra - bits_);
  return mantissa_ < 0 ? -v : v;
}

std::string FixedReal::to_string(int digits) const {
  const mpz_class a = abs(mantissa_);
  mpz_class ip;
  mpz_fdiv_q_2exp(ip.get_mpz_t(), a.get_mpz_t(), bits_);
  mpz_class fp;
  mpz_fdiv_r_2exp(fp.get_mpz_t(), a.get_mpz_t(), bits_);
  std::string out = (mantissa_ < 0 ? "-" : "") + ip.get_str();
  if (digits <= 0) return out;
  out.push_back('.');
  for (int i = 0; i < digits; ++i) {
    fp *= 10;
    mpz_class d;
    mpz_fdiv_q_2exp(d.get_mpz_t(), fp.get_mpz_t(), bits_);
    mpz_fdiv_r_2exp(fp.get_mpz_t(), fp.get_mpz_t(), bits_);
    out.push_back(static_cast<char>('0' + d.get_si()));
  }
  return out;
}

FixedReal& FixedReal::operator+=(const FixedReal& rhs) {
  if (rhs.bits_ == bits_) {
    mantissa_ += rhs.mantissa_;
  } else if (rhs.bits_ < bits_) {
    mantissa_ += shift_left(rhs.mantissa_, static_cast<unsigned long>(bits_ - rhs.bits_));
  } else {
    mantissa_ = shift_left(mantissa_, static_cast<unsigned long>(rhs.bits_ - bits_)) +
                rhs.mantissa_;
    bits_ = rhs.bits_;
  }
  return *this;
}

FixedReal& FixedReal::operator-=(const FixedReal& rhs) { return *this += -rhs; }

FixedReal& FixedReal::operator*=(const FixedReal& rhs) {
  const int out_bits = std::max(bits_, rhs.bits_);
  const int drop = bits_ + rhs.bits_ - out_bits;
  mantissa_ = round_shift(mantissa_ * rhs.mantissa_, static_cast<unsigned long>(drop));
  bits_ = out_bits;
  return *this;
}

FixedReal& FixedReal::operator*=(const mpz_class& k) {
  mantissa_ *= k;
  return *this;
}

bool operator==(const FixedReal& a, const FixedReal& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const FixedReal& a, const FixedReal& b) {
  int c = 0;
  if (a.bits_ == b.bits_) {
    c = cmp(a.mantissa_, b.mantissa_);
  } else if (a.bits_ < b.bits_) {
    c = cmp(shift_left(a.mantissa_, static_cast<unsigned long>(b.bits_ - a.bits_)),
            b.mantissa_);
  } else {
    c = cmp(a.mantissa_,
            shift_left(b.mantissa_, static_cast<unsigned long>(a.bits_ - b.bits_)));
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

FixedReal frac(const FixedReal& x) {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.mantissa().get_mpz_t(), x.frac_bits());
  return FixedReal(r, x.frac_bits());
}

FixedReal dist_nearest(const FixedReal& x) {
  FixedReal f = frac(x);
  const mpz_class half = pow2(static_cast<unsigned long>(x.frac_bits() - 1));
  if (f.mantissa() > half) {
    return FixedReal(pow2(static_cast<unsigned long>(x.frac_bits())) - f.mantissa(),
                     x.frac_bits());
  }
  return f;
}

FixedReal psi(const FixedReal& t) {
  const FixedReal f = frac(t);
  return FixedReal(f.mantissa() - pow2(static_cast<unsigned long>(t.frac_bits() - 1)),
                   t.frac_bits());
}

UnitComplex::UnitComplex(double re, double im) {
  const double n = std::hypot(re, im);
  re_ = re / n;
  im_ = im / n;
}

UnitComplex UnitComplex::from_turns(double t) {
  if (t >= 0.5) t -= 1.0;
  const double angle = 2.0 * std::numbers::pi * t;
  return UnitComplex(std::cos(angle), std::sin(angle));
}

UnitComplex operator*(const UnitComplex& a, const UnitComplex& b) {
  return UnitComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

UnitComplex e_of(const FixedReal& x) {
  return UnitComplex::from_turns(frac(x).to_double());
}

PowResult pow_real(std::uint64_t n, const Rational& gamma, int bits) {
  check_bits(bits);
  if (n == 0) throw RangeError("pow_real requires n >= 1");
  if (gamma <= Rational(0) || gamma >= Rational(2)) {
    throw RangeError("pow_real requires gamma in (0, 2)");
  }
  if (n == 1) return {FixedReal::from_integer(1, bits), true};

  const mpz_class nz = from_u64(n);
  const int nbits = bit_length(nz);
  const auto wp = static_cast<mpfr_prec_t>(
      bits + 64 + 2 * nbits + bit_length(mpz_class(static_cast<long>(gamma.num()))) +
      bit_length(mpz_class(static_cast<long>(gamma.den()))));
  MpfrValue t(wp);
  mpfr_set_z(t.get(), nz.get_mpz_t(), MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_si(t.get(), t.get(), static_cast<long>(gamma.num()), MPFR_RNDN);
  mpfr_div_si(t.get(), t.get(), static_cast<long>(gamma.den()), MPFR_RNDN);
  mpfr_exp(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_2si(t.get(), t.get(), bits, MPFR_RNDN);
  mpz_class mant;
  mpfr_get_z(mant.get_mpz_t(), t.get(), MPFR_RNDN);

  FixedReal value(mant, bits);
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), mant.get_mpz_t(), bits);
  const mpz_class guard = pow2(32);
  const bool near = r <= guard || pow2(static_cast<unsigned long>(bits)) - r <= guard;
  return {std::move(value), near};
}

namespace {

bool is_integral_power(std::uint64_t n, const Rational& gamma) {
  if (gamma.den() == 1 || n == 1) return true;
  mpz_class root;
  return mpz_root(root.get_mpz_t(), from_u64(n).get_mpz_t(),
                  static_cast<unsigned long>(gamma.den())) != 0;
}

}  // namespace

PowFloor floor_pow(std::uint64_t n, const Rational& gamma, int bits) {
  check_bits(bits);
  const int cap = 8 * bits;
  for (int b = bits; b <= cap; b *= 2) {
    PowResult r = pow_real(n, gamma, b);
    if (!r.near_integer) {
      mpz_class fl = r.value.floor();
      return {std::move(r.value), std::move(fl), false, b};
    }
    if (is_integral_power(n, gamma)) {
      const mpz_class k =
          round_shift(r.value.mantissa(), static_cast<unsigned long>(b));
      return {FixedReal::from_integer(k, b), k, true, b};
    }
  }
  throw AmbiguousFloor(n, cap);
}

FixedReal psi_of_negated(const PowFloor& x) {
  const int b = x.value.frac_bits();
  FixedReal f = FixedReal::from_integer(x.ceil(), b) - x.value;
  return FixedReal(f.mantissa() - pow2(static_cast<unsigned long>(b - 1)), b);
}

int reduction_bits(std::uint64_t h_max, std::uint64_t n_max) {
  const mpz_class m = from_u64(n_max) + 1;
  const mpz_class prod = from_u64(std::max<std::uint64_t>(h_max, 1)) * m * m;
  return std::max(FixedReal::kMinBits, bit_length(prod) + 64);
}

}  // namespace pslab
