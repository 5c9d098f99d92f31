#pragma once

#include <functional>

#include "lcadm/common.hpp"
#include "lcadm/quadrature.hpp"

namespace lcadm {

/// Gamma function for x > 0 (the only range the library needs).
double gamma_fn(double x);

/// f(t) = t^beta * exp(-rate*t) on (0, inf). The family every test function
/// in the sectorial criteria is drawn from; its Laplace transform has the
/// closed form Gamma(beta+1) / (z + rate)^(beta+1) for Re z > -rate.
struct ExpPowerFunction {
  double beta = 0.0;  // > -1
  double rate = 0.0;  // >= 0

  double operator()(double t) const;
  Complex laplace(Complex z) const;
};

struct HalfLineResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

struct ComplexHalfLineResult {
  Complex value{0.0, 0.0};
  double error = 0.0;
  bool converged = false;
};

// Integral over (0, inf). Internally substitutes t = e^u - 1 and splits the
// range at t = 1; the lower piece gets a geometrically graded seed mesh so
// t^beta endpoint singularities (beta > -1) converge, the upper piece is
// extended panel by panel until the tail is negligible. Non-convergence and
// non-integrable growth are reported through `converged`, never silently.
HalfLineResult integrate_halfline(const std::function<double(double)>& f,
                                  double tol = 1e-10);
ComplexHalfLineResult integrate_halfline_complex(
    const std::function<Complex(double)>& f, double tol = 1e-10);

/// Laplace transform of a function handle at Re z > 0. Throws NumericError if
/// the quadrature does not converge.
Complex laplace_at(const std::function<double(double)>& f, Complex z,
                   double tol = 1e-10);

/// Closed-form dispatch for the exponential-power family.
Complex laplace_at(const ExpPowerFunction& f, Complex z);

}  // namespace lcadm
