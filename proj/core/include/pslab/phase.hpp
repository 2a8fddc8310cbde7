#pragma once

// Phase functions f fed to exponential sums e(f(n)).
//
//   zero       f = 0
//   monomial   f(n) = sigma * n^k (k in 1..3); as a function of two
//              variables, sigma * (d l)^k
//   bilinear   f(d, l) = alpha h d^2 l^2 - m d^gamma l^gamma, with one of
//              d, l held fixed when used as a function of one variable

#include <cstdint>
#include <string>
#include <vector>

#include "pslab/diophantine.hpp"
#include "pslab/numerics.hpp"
#include "pslab/rational.hpp"

namespace pslab {

enum class Variable { d, l };

class PhaseSpec {
 public:
  enum class Kind { zero, monomial, bilinear };

  static PhaseSpec zero();
  static PhaseSpec monomial(FixedReal sigma, int degree);
  static PhaseSpec bilinear(AlphaSpec alpha, std::int64_t h, std::int64_t m,
                            Rational gamma, Variable running = Variable::l,
                            std::int64_t fixed = 1);

  Kind kind() const noexcept { return kind_; }
  const FixedReal& sigma() const noexcept { return sigma_; }
  int degree() const noexcept { return degree_; }
  const AlphaSpec& alpha() const noexcept { return alpha_; }
  std::int64_t h() const noexcept { return h_; }
  std::int64_t m() const noexcept { return m_; }
  const Rational& gamma() const noexcept { return gamma_; }
  Variable running() const noexcept { return running_; }
  std::int64_t fixed() const noexcept { return fixed_; }

  // Same phase with a different running variable / fixed value.
  PhaseSpec with_fixed(Variable running, std::int64_t fixed) const;

  // f''' in the running variable, closed form.
  double third_derivative(double x) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::zero;
  FixedReal sigma_;
  int degree_ = 0;
  AlphaSpec alpha_ = AlphaSpec::rational(0, 1);
  std::int64_t h_ = 0;
  std::int64_t m_ = 0;
  Rational gamma_;
  Variable running_ = Variable::l;
  std::int64_t fixed_ = 1;
};

// Evaluates a phase at integer points with exact reduction modulo one.
// Arguments up to max_arg use a cached table of k^gamma; products d*l are
// assumed to stay below max_product when choosing the working precision.
class PhaseEvaluator {
 public:
  PhaseEvaluator(const PhaseSpec& phase, std::uint64_t max_arg,
                 std::uint64_t max_product);

  int bits() const noexcept { return bits_; }
  const PhaseSpec& phase() const noexcept { return phase_; }

  FixedReal at(std::uint64_t d, std::uint64_t l) const;
  // Running variable x, the other one fixed.
  FixedReal at(std::uint64_t x) const;

  UnitComplex e_at(std::uint64_t d, std::uint64_t l) const { return e_of(at(d, l)); }
  UnitComplex e_at(std::uint64_t x) const { return e_of(at(x)); }

 private:
  FixedReal power(std::uint64_t k) const;

  PhaseSpec phase_;
  int bits_ = FixedReal::kMinBits;
  FixedReal alpha_h_;
  FixedReal sigma_;
  std::vector<FixedReal> powers_;
};

}  // namespace pslab
