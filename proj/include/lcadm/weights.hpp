#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lcadm/laplace.hpp"
#include "lcadm/measures.hpp"

namespace lcadm {

/// Weight on (0, inf). Variants:
///  - power      : w(t) = t^alpha
///  - zen        : w(t) = 2 pi * sum_n t^(2n) * integral e^(-2rt) d nu_n(r),
///                 one radial measure per derivative order n = 0..m
///  - table      : positive samples, piecewise-linear in log t, clamped
///                 outside the knot range
///  - power_of   : pointwise w0^s (produced by the dual transform)
class Weight {
public:
  static Weight power(double alpha);
  static Weight zen(std::vector<RadialMeasure> components);
  static Weight table(std::vector<double> knots, std::vector<double> values);

  double operator()(double t) const;

  /// Pointwise power w^s. Stays closed-form for power weights.
  Weight pow(double s) const;

  bool is_power() const;
  double power_alpha() const;  // throws unless is_power()

  const std::vector<RadialMeasure>* zen_components() const;  // null if not zen

private:
  struct Power {
    double alpha;
  };
  struct Zen {
    std::vector<RadialMeasure> components;
  };
  struct Table {
    std::vector<double> knots, values;
  };
  struct PowerOf {
    std::shared_ptr<const Weight> base;
    double exponent;
  };
  std::variant<Power, Zen, Table, PowerOf> rep_;
};

double eval_weight(const Weight& w, double t);

struct LpwNorm {
  double value = 0.0;
  double error = 0.0;  // propagated quadrature estimate on the norm
  bool converged = false;
};

/// (integral |f|^p w dt)^(1/p) by half-line quadrature.
LpwNorm lpw_norm(const std::function<double(double)>& f, double p,
                 const Weight& w, double tol = 1e-10);

/// Closed form for ||t^beta e^{-rate t}||_{L^p_{t^alpha}}. Throws
/// NumericError when the integral diverges.
double lpw_norm_exppower(const ExpPowerFunction& f, double p, double alpha);

struct DualProblem {
  double p_conj;
  double q_conj;
  Weight weight;  // w^(-p'/p)
};

/// Conjugate exponents and the transformed weight of the adjoint embedding.
DualProblem dual_problem(double p, double q, const Weight& w);

}  // namespace lcadm
