#include "pslab/phase.hpp"

#include <algorithm>
#include <cmath>

#include "pslab/errors.hpp"

namespace pslab {

namespace {

mpz_class from_u64(std::uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

}  // namespace

PhaseSpec PhaseSpec::zero() { return PhaseSpec(); }

PhaseSpec PhaseSpec::monomial(FixedReal sigma, int degree) {
  if (degree < 1 || degree > 3) throw RangeError("monomial degree must be 1, 2 or 3");
  PhaseSpec p;
  p.kind_ = Kind::monomial;
  p.sigma_ = std::move(sigma);
  p.degree_ = degree;
  return p;
}

PhaseSpec PhaseSpec::bilinear(AlphaSpec alpha, std::int64_t h, std::int64_t m,
                              Rational gamma, Variable running, std::int64_t fixed) {
  if (h < 1 || m < 1) throw RangeError("bilinear phase requires h, m >= 1");
  if (fixed < 1) throw RangeError("bilinear phase requires a positive fixed variable");
  if (gamma <= Rational(0) || gamma >= Rational(2)) {
    throw GammaOutOfRange("bilinear phase requires gamma in (0, 2)");
  }
  PhaseSpec p;
  p.kind_ = Kind::bilinear;
  p.alpha_ = std::move(alpha);
  p.h_ = h;
  p.m_ = m;
  p.gamma_ = gamma;
  p.running_ = running;
  p.fixed_ = fixed;
  return p;
}

PhaseSpec PhaseSpec::with_fixed(Variable running, std::int64_t fixed) const {
  if (fixed < 1) throw RangeError("fixed variable must be positive");
  PhaseSpec p = *this;
  p.running_ = running;
  p.fixed_ = fixed;
  return p;
}

double PhaseSpec::third_derivative(double x) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::monomial:
      return degree_ == 3 ? 6.0 * sigma_.to_double() : 0.0;
    case Kind::bilinear: {
      const double g = gamma_.to_double();
      const double c = std::pow(static_cast<double>(fixed_), g);
      return -static_cast<double>(m_) * c * g * (g - 1.0) * (g - 2.0) * std::pow(x, g - 3.0);
    }
  }
  return 0.0;
}

std::string PhaseSpec::to_string() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::monomial:
      return "monomial(sigma=" + sigma_.to_string(20) + ",k=" + std::to_string(degree_) + ")";
    case Kind::bilinear:
      return "bilinear(alpha=" + alpha_.to_string() + ",h=" + std::to_string(h_) +
             ",m=" + std::to_string(m_) + ",gamma=" + gamma_.to_string() + "," +
             (running_ == Variable::l ? "d=" : "l=") + std::to_string(fixed_) + ")";
  }
  return {};
}

PhaseEvaluator::PhaseEvaluator(const PhaseSpec& phase, std::uint64_t max_arg,
                               std::uint64_t max_product)
    : phase_(phase) {
  max_product = std::max(max_product, max_arg);
  switch (phase_.kind()) {
    case PhaseSpec::Kind::zero:
      bits_ = FixedReal::kMinBits;
      break;
    case PhaseSpec::Kind::monomial:
      bits_ = phase_.sigma().frac_bits();
      sigma_ = phase_.sigma();
      break;
    case PhaseSpec::Kind::bilinear: {
      const auto fixed = static_cast<std::uint64_t>(phase_.fixed());
      const std::uint64_t reach = std::max(max_product, max_arg * fixed);
      const int quad = reduction_bits(static_cast<std::uint64_t>(phase_.h()), reach);
      const int lin = bit_length(from_u64(static_cast<std::uint64_t>(phase_.m())) *
                                 from_u64(reach + 1)) + 64;
      bits_ = std::max(quad, lin) + 8;
      alpha_h_ = phase_.alpha().evaluate(bits_) *
                 mpz_class(static_cast<long>(phase_.h()));
      powers_.reserve(max_arg + 1);
      powers_.push_back(FixedReal::from_integer(0, bits_));
      for (std::uint64_t k = 1; k <= max_arg; ++k) {
        powers_.push_back(pow_real(k, phase_.gamma(), bits_).value);
      }
      break;
    }
  }
}

FixedReal PhaseEvaluator::power(std::uint64_t k) const {
  if (k < powers_.size()) return powers_[k];
  return pow_real(k, phase_.gamma(), bits_).value;
}

FixedReal PhaseEvaluator::at(std::uint64_t d, std::uint64_t l) const {
  switch (phase_.kind()) {
    case PhaseSpec::Kind::zero:
      return FixedReal::from_integer(0, bits_);
    case PhaseSpec::Kind::monomial: {
      mpz_class n = from_u64(d) * from_u64(l);
      mpz_class nk = n;
      for (int i = 1; i < phase_.degree(); ++i) nk *= n;
      return sigma_ * nk;
    }
    case PhaseSpec::Kind::bilinear: {
      const mpz_class n = from_u64(d) * from_u64(l);
      FixedReal quad = alpha_h_ * mpz_class(n * n);
      FixedReal lin = (power(d) * power(l)) * mpz_class(static_cast<long>(phase_.m()));
      return quad - lin;
    }
  }
  return {};
}

FixedReal PhaseEvaluator::at(std::uint64_t x) const {
  if (phase_.kind() == PhaseSpec::Kind::monomial) return at(x, 1);
  const auto fixed = static_cast<std::uint64_t>(phase_.fixed());
  return phase_.running() == Variable::l ? at(fixed, x) : at(x, fixed);
}

}  // namespace pslab
