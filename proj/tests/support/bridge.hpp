#pragma once

// Conversions between library values and oracle values, for comparisons.

#include <complex>
#include <cstdlib>
#include <string>

#include "oracles.hpp"
#include "pslab/numerics.hpp"

namespace oracle {

inline Float to_float(const pslab::FixedReal& x) {
  const Float m(x.mantissa().get_str());
  return boost::multiprecision::ldexp(m, -x.frac_bits());
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

}  // namespace oracle
