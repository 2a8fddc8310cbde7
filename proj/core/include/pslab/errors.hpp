#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or an unmet precondition. The CLI maps these to exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A relation that holds unconditionally was observed to fail; always a bug.
// The CLI maps these to exit code 3.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class RangeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class GammaOutOfRange : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class AmbiguousFloor : public PreconditionError {
 public:
  AmbiguousFloor(std::uint64_t n, int bits)
      : PreconditionError("floor of " + std::to_string(n) +
                          "^gamma is ambiguous at " + std::to_string(bits) +
                          " fractional bits"),
        n_(n) {}
  std::uint64_t argument() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

class RationalAlpha : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class PrecisionExhausted : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SegmentTooLarge : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class HypothesisViolated : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InequalityViolated : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class BoundViolated : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class IdentityViolated : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace pslab
