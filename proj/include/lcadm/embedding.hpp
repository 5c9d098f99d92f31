#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcadm/measures.hpp"
#include "lcadm/weights.hpp"

namespace lcadm {

/// The embedding under test: f in L^p_w(0,inf) mapped by the Laplace
/// transform into L^q of the half-plane measure.
struct EmbeddingProblem {
  double p;
  double q;
  Weight weight;
  PlaneMeasure measure;

  EmbeddingProblem(double p_, double q_, Weight w, PlaneMeasure mu);
  double p_conj() const { return conjugate_exponent(p); }
  double q_conj() const { return conjugate_exponent(q); }
};

/// beta = (q/p') (1 - alpha/(p-1)), the power governing how truncated-sector
/// masses must scale with the truncation length.
double criterion_exponent(double p, double q, double alpha);

struct TableRow {
  double level = 0.0;  // length, center Re, or 2^k depending on the check
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool skipped = false;
  std::string note;
};

struct RatioTable {
  std::vector<TableRow> rows;
  double sup_ratio = 0.0;
  double attained = 0.0;
  int skipped = 0;
};

/// Interval test on measures supported on the positive axis:
/// mu((0, L]) against ( integral e^{-L p' t} w^{-1/(p-1)} dt )^{-q/p'}.
/// The sup of the ratios estimates the best necessary constant.
RatioTable necessary_interval_check(const EmbeddingProblem& prob,
                                    std::span<const double> lengths,
                                    double tol = 1e-10);

struct StripCheck {
  struct Row {
    double x_lo = 0.0, x_hi = 0.0;
    double mass = 0.0;
    double integral = 0.0;  // integral e^{-p' t x_lo} w^{-1/(p-1)} dt
    double c = 0.0;         // mass * integral^(q/p')
    bool diverged = false;
  };
  std::vector<Row> rows;
  double sum = 0.0;         // sum |c_n|
  double norm_bound = 0.0;  // sum^(1/q), an upper bound for the embedding norm
  double uncovered_mass = 0.0;
  bool all_finite = true;
};

/// Strip-wise sufficient test over a partition x_0 < x_1 < ... of (0, inf).
StripCheck sufficient_strip_check(const EmbeddingProblem& prob,
                                  std::span<const double> partition,
                                  double tol = 1e-10);

struct SectorialResult {
  std::vector<TableRow> rows;  // per dyadic level: mass of the truncation and
                               // the ratio mass / length^beta
  double beta = 0.0;
  double sup_ratio = 0.0;      // sup over every truncation length in range;
                               // for atomic measures this is attained at an
                               // atom abscissa, not necessarily a power of 2
  double attained_length = 0.0;
  int attained_level = 0;      // first dyadic level containing the attainer
  double slope = 0.0;          // LS slope of log2 ratio over the top half
  double slope_last10 = 0.0;   // same over the last (up to) 10 levels
  int levels_fitted = 0;
};

/// Dyadic scan of mu(truncated sector of length 2^j) / 2^(j beta).
/// Requires 1 < p <= q, a power weight with alpha < p-1, and every atom
/// strictly inside the sector.
SectorialResult sectorial_criterion(const EmbeddingProblem& prob, double theta,
                                    int j_lo, int j_hi);

std::pair<int, int> default_dyadic_range(const PlaneMeasure& mu);

struct LowerBoundResult {
  double value = 0.0;  // certified lower bound for the embedding norm
  double attained_rate = 0.0;
  std::vector<TableRow> rows;
};

/// Rayleigh-quotient lower bounds from the test family
/// f_a(t) = t^(-alpha/(p-1)) e^(-a t).
LowerBoundResult embedding_lower_bound(const EmbeddingProblem& prob,
                                       double theta,
                                       std::span<const double> rates);

/// Weighted space with derivative terms: component n carries the radial
/// measure of the n-th derivative norm.
struct ApSpaceSpec {
  double p;
  std::vector<RadialMeasure> components;
  std::vector<Delta2Result> doubling;  // per-component diagnostics

  ApSpaceSpec(double p_, std::vector<RadialMeasure> comps);
};

/// Square test: mu(Q(a)) against [ sum_n nu_n(closure Q(a)) / (Re a)^(np) ]^(q/p).
RatioTable square_necessary_check(const ApSpaceSpec& space, double q,
                                  const PlaneMeasure& mu,
                                  std::span<const Complex> centers);

struct BesovWeight {
  std::function<double(Complex)> rho;
  // Declared growth envelope rho(z) <= growth_coef * (1 + |z|)^growth_power,
  // needed for analytic truncation tails.
  double growth_power = 0.0;
  double growth_coef = 1.0;

  static BesovWeight constant(double c = 1.0);
};

/// Square-overlap test
///   ( int_{Q(a)} mu(Q(a) cap Q(z))^{p'} (Re z)^{-2} rho(z)^{1-p'} dz )^{q'/p'}
/// against mu(Q(a)), exploiting that the overlap mass is piecewise constant
/// in z for atomic measures.
RatioTable tree_sufficient_check(const PlaneMeasure& mu, double p, double q,
                                 const BesovWeight& rho,
                                 std::span<const Complex> centers,
                                 double tol = 1e-6);

struct BesovEnergy {
  double value = 0.0;
  double tail_bound = 0.0;
  double radius = 0.0;
  bool converged = false;
};

/// Derivative energy  int |F'(z)|^p (Re z)^(p-2) rho(z) dz  for
/// F = sum c_i L[t^(beta_i) e^(-a_i t)], over a truncated half-plane with a
/// reported analytic tail bound.
BesovEnergy besov_energy(std::span<const std::pair<double, ExpPowerFunction>> terms,
                         double p, const BesovWeight& rho, double tol = 1e-6);

/// Square-mass test for the p = 2 space with derivative terms; squares are
/// centred at the real points 2^k * base_length.
RatioTable a2m_sectorial_check(const ApSpaceSpec& space, const PlaneMeasure& mu,
                               double theta, double base_length, int k_lo,
                               int k_hi);

/// (integral |Lf|^q dmu)^(1/q) for an atomic measure (finite sum over atoms).
double lq_norm_of_laplace(const PlaneMeasure& mu, double q,
                          const std::function<Complex(Complex)>& transform);

}  // namespace lcadm
