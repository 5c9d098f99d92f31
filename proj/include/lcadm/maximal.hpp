#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lcadm/weights.hpp"

namespace lcadm {

/// Finite truncation of a bi-infinite partition of (0, inf) with the pivot
/// t0 = 1. negative_knots decrease toward 0, positive_knots start at 1.
struct Partition {
  std::vector<double> negative_knots;  // t_{-1} > t_{-2} > ... > 0
  std::vector<double> positive_knots;  // 1 = t_0 <= t_1 <= ...

  Partition(std::vector<double> neg, std::vector<double> pos);

  // t_{-k} = 2^-k (k <= 20), t_k = 1 + k/2 (k <= 58); sized so the e^{-t}
  // tails sit below 1e-12 for power weights with alpha in [-1, 0].
  static Partition standard();
};

struct StarPoint {
  double lo, hi;    // interval
  double t_star;    // maximizer of h on [lo, hi]
  double h_star;    // h(t_star)
  double weight;    // (1 - t_k) on the left of 1, (t_{k+1} - 1) on the right
};

struct ThetaResult {
  double value = 0.0;
  std::vector<StarPoint> star_points;
  // True when the last term on the corresponding side was still shrinking at
  // the truncation point; a false flag means the partial sum is not settled.
  bool negative_tail_decreasing = true;
  bool positive_tail_decreasing = true;
  std::string warning;
};

/// Theta(P, w, x) = 2 [ sum_{k<=-1} h(t*_k)(1 - t_k) + sum_{k>=0} h(t*_k)(t_{k+1} - 1) ]
/// with h(t) = e^{-t} w(t x)^{-1/p}, each t*_k maximizing h over its closed
/// interval. Power weights use the closed-form maximizer (critical point
/// t = -alpha/p when alpha < 0), everything else golden-section search.
ThetaResult theta(const Partition& P, const Weight& w, double p, double x);

/// Sliding-window averages max over the radii grid: a lower bound for the
/// maximal function that converges as the grid refines.
double maximal_function(const std::function<double(double)>& g, double x,
                        std::span<const double> radii);

std::vector<double> default_radii(double x);

struct EstimateCheck {
  double lhs = 0.0;        // integral of e^{-t/x} |f(t)| dt
  double rhs = 0.0;        // Theta * x * Mg(x)
  bool holds = false;
  int refinements = 0;     // maximal-grid refinement rounds used
  ThetaResult theta;
};

/// Checks lhs <= Theta(P,w,x) * x * Mg(x) with g = w^{1/p} f. The right side
/// uses a grid lower bound for Mg, so an apparent violation first triggers
/// grid refinement before being reported.
EstimateCheck verify_estimate(const std::function<double(double)>& f,
                              const Weight& w, double p, double x,
                              const Partition& P);

}  // namespace lcadm
