#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lcadm {

using Complex = std::complex<double>;

/// Numerical failure (quadrature divergence, iteration not converging, ...).
/// Distinct from std::invalid_argument, which we reserve for violated
/// preconditions on user-supplied data.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("conjugate exponent needs p > 1");
  return p / (p - 1.0);
}

}  // namespace lcadm
