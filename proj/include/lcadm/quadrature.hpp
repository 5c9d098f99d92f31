#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lcadm/common.hpp"

namespace lcadm::quad {

struct Options {
  double tol = 1e-10;     // relative target for the accumulated error estimate
  int max_panels = 20000; // subdivision cap; exceeding it reports non-convergence
};

struct Outcome {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int panels = 0;
};

struct ComplexOutcome {
  Complex value{0.0, 0.0};
  double error = 0.0;
  bool converged = false;
  int panels = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a,b]. Nodes are interior, so integrable
// endpoint singularities are refined into rather than evaluated.
Outcome integrate(const std::function<double(double)>& f, double a, double b,
                  const Options& opt = {});
ComplexOutcome integrate_complex(const std::function<Complex(double)>& f,
                                 double a, double b, const Options& opt = {});

// Same engine, but seeded with a caller-supplied initial panel list (used for
// integrands with known breakpoints or graded meshes near a singularity).
Outcome integrate_panels(const std::function<double(double)>& f,
                         const std::vector<std::pair<double, double>>& panels,
                         const Options& opt = {});

}  // namespace lcadm::quad
