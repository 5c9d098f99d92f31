#include "lcadm/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcadm/quadrature.hpp"

namespace lcadm {

namespace {
constexpr double kPi = std::numbers::pi;
}

DiagonalSystem::DiagonalSystem(std::vector<Complex> lambdas,
                               std::vector<Complex> b, double q,
                               TailRule tail_rule)
    : eigenvalues(std::move(lambdas)),
      coefficients(std::move(b)),
      state_exponent(q),
      tail(tail_rule) {
  if (eigenvalues.size() != coefficients.size())
    throw std::invalid_argument("DiagonalSystem: eigenvalue/coefficient length mismatch");
  if (!(q >= 1.0))
    throw std::invalid_argument("DiagonalSystem: state exponent must be >= 1");
  for (const auto& l : eigenvalues)
    if (!(l.real() < 0.0))
      throw std::invalid_argument(
          "DiagonalSystem: eigenvalue with Re >= 0 at Re = " +
          std::to_string(l.real()));
}

double DiagonalSystem::sector_tan() const {
  double t = 0.0;
  for (const auto& l : eigenvalues)
    t = std::max(t, std::abs(l.imag()) / (-l.real()));
  return t;
}

DiagonalSystem builtin_system(std::string_view name, int modes) {
  if (modes < 1) throw std::invalid_argument("builtin_system: modes must be >= 1");
  std::vector<Complex> lambdas, b;
  if (name == "heat-neumann") {
    if (modes > 10000000)
      throw std::invalid_argument("builtin_system: heat-neumann mode cap exceeded");
    for (int k = 1; k <= modes; ++k) {
      lambdas.emplace_back(-static_cast<double>(k) * k * kPi * kPi, 0.0);
      b.emplace_back(1.0, 0.0);
    }
    return DiagonalSystem(std::move(lambdas), std::move(b), 2.0, TailRule::quadratic);
  }
  if (name == "parabolic-2n") {
    if (modes > 400)
      throw std::invalid_argument("builtin_system: parabolic-2n mode cap exceeded");
    for (int k = 1; k <= modes; ++k) {
      lambdas.emplace_back(-std::ldexp(1.0, k), 0.0);
      b.emplace_back(std::ldexp(1.0, k) / k, 0.0);
    }
    return DiagonalSystem(std::move(lambdas), std::move(b), 2.0, TailRule::geometric);
  }
  throw std::invalid_argument("builtin_system: unknown system \"" + std::string(name) + "\"");
}

PlaneMeasure system_measure(const DiagonalSystem& sys) {
  std::vector<PlaneAtom> atoms;
  for (size_t k = 0; k < sys.size(); ++k) {
    const double mass = std::pow(std::abs(sys.coefficients[k]), sys.state_exponent);
    if (mass > 0.0) atoms.push_back({-sys.eigenvalues[k], mass});
  }
  return PlaneMeasure::atomic(std::move(atoms));
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::admissible: return "admissible";
    case Classification::not_admissible: return "not_admissible";
    case Classification::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double fit_slope(std::span<const std::pair<double, double>> pts) {
  const size_t n = pts.size();
  if (n < 2) return 0.0;
  double sx = 0, sy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double num = 0, den = 0;
  for (auto [x, y] : pts) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  return den > 0 ? num / den : 0.0;
}

// Exact asymptotic growth of the threshold ratio per dyadic level.
double tail_growth_rate(TailRule rule, double beta, double q) {
  switch (rule) {
    case TailRule::quadratic:
      // thresholds ~ m^2, cumulative mass ~ m: growth 1/2 - beta.
      return 0.5 - beta;
    case TailRule::geometric:
      // thresholds 2^m, cumulative mass ~ 2^{qm}/m^q: growth q - beta.
      return q - beta;
    case TailRule::none:
      break;
  }
  return 0.0;
}

// Threshold ratio evaluated from the rule's closed form, used to extend the
// scan past the truncation when a tail rule is attached.
double rule_ratio(TailRule rule, double beta, double q, int m) {
  if (rule == TailRule::quadratic) {
    const double r = static_cast<double>(m) * m * kPi * kPi;
    return m * std::pow(r, -beta);
  }
  double cum = 0.0;
  for (int k = 1; k <= m; ++k)
    cum += std::pow(std::ldexp(1.0, k) / k, q);
  return cum * std::pow(std::ldexp(1.0, m), -beta);
}

Verdict verdict_impl(const DiagonalSystem& sys, double p, double alpha,
                     double beta, const VerdictThresholds& th) {
  const double q = sys.state_exponent;
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("admissibility_verdict: p must lie in (1, inf)");
  if (!(p <= q))
    throw std::invalid_argument("admissibility_verdict: requires p <= q");
  if (!(alpha < p - 1.0))
    throw std::invalid_argument("admissibility_verdict: requires alpha < p - 1");

  Verdict v;
  v.beta = beta;

  // Threshold table over the materialized modes (ties merged).
  std::vector<std::pair<double, double>> rm;
  for (size_t k = 0; k < sys.size(); ++k) {
    const double mass = std::pow(std::abs(sys.coefficients[k]), q);
    if (mass > 0.0) rm.emplace_back(-sys.eigenvalues[k].real(), mass);
  }
  std::sort(rm.begin(), rm.end());
  double acc = 0.0;
  for (const auto& [r, m] : rm) {
    acc += m;
    if (!v.thresholds.empty() && v.thresholds.back().threshold == r) {
      v.thresholds.back().mass = acc;
      v.thresholds.back().ratio = acc * std::pow(r, -beta);
    } else {
      v.thresholds.push_back({r, acc, acc * std::pow(r, -beta)});
    }
  }
  for (const auto& row : v.thresholds)
    if (row.ratio > v.criterion_constant) {
      v.criterion_constant = row.ratio;
      v.attained_threshold = row.threshold;
    }

  // Dyadic evidence and slope fits.
  std::vector<std::pair<double, double>> logpts;
  if (!v.thresholds.empty()) {
    const int j_lo = std::max(-20, static_cast<int>(std::floor(
                                       std::log2(v.thresholds.front().threshold))));
    const int j_hi = std::min(1020, static_cast<int>(std::ceil(
                                        std::log2(v.thresholds.back().threshold))));
    size_t idx = 0;
    double cum = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
      const double len = std::ldexp(1.0, j);
      while (idx < v.thresholds.size() && v.thresholds[idx].threshold <= len)
        cum = v.thresholds[idx++].mass;
      TableRow row;
      row.level = len;
      row.lhs = cum;
      row.ratio = cum * std::pow(len, -beta);
      v.dyadic.push_back(row);
      if (cum > 0.0) logpts.emplace_back(j, std::log2(row.ratio));
    }
  }
  if (logpts.size() >= 2) {
    v.slope = fit_slope(std::span(logpts).subspan(logpts.size() / 2));
    const size_t last = logpts.size() > 10 ? logpts.size() - 10 : 0;
    v.slope_last10 = fit_slope(std::span(logpts).subspan(last));
  }

  if (sys.tail != TailRule::none) {
    const double growth = tail_growth_rate(sys.tail, beta, q);
    v.tail_growth = growth;
    if (growth <= 1e-12) {
      v.classification = Classification::admissible;
      // The ratio may still rise for a few levels past the truncation before
      // the decay sets in; extend the scan with the rule's closed form.
      const int horizon = std::max<int>(static_cast<int>(sys.size()), 128);
      for (int m = static_cast<int>(sys.size()) + 1; m <= horizon; ++m) {
        const double ratio = rule_ratio(sys.tail, beta, q, m);
        if (ratio > v.criterion_constant) {
          v.criterion_constant = ratio;
          v.attained_threshold = sys.tail == TailRule::quadratic
                                     ? m * m * kPi * kPi
                                     : std::ldexp(1.0, m);
          v.warnings.push_back("criterion constant attained beyond the truncation");
        }
      }
    } else {
      v.classification = Classification::not_admissible;
    }
  } else {
    v.warnings.push_back("no tail rule: classification is trend-based on the truncation");
    if (v.thresholds.empty() || v.slope <= th.bounded_slope)
      v.classification = Classification::admissible;
    else if (v.slope_last10 >= th.divergent_slope)
      v.classification = Classification::not_admissible;
    else
      v.classification = Classification::inconclusive;
  }
  return v;
}

}  // namespace

Verdict admissibility_verdict(const DiagonalSystem& sys, double p, double alpha,
                              const VerdictThresholds& th) {
  return verdict_impl(sys, p, alpha,
                      criterion_exponent(p, sys.state_exponent, alpha), th);
}

Verdict admissibility_verdict_with_beta(const DiagonalSystem& sys, double p,
                                        double alpha, double beta,
                                        const VerdictThresholds& th) {
  return verdict_impl(sys, p, alpha, beta, th);
}

ThresholdCurve threshold_curve(const DiagonalSystem& sys,
                               std::span<const double> p_grid,
                               std::span<const double> alpha_grid,
                               const VerdictThresholds& th) {
  ThresholdCurve out;
  for (double alpha : alpha_grid) {
    double smallest = std::numeric_limits<double>::quiet_NaN();
    for (double p : p_grid) {
      CurveCell cell;
      cell.p = p;
      cell.alpha = alpha;
      cell.applicable = p > 1.0 && p <= sys.state_exponent && alpha < p - 1.0;
      if (cell.applicable) {
        cell.verdict = admissibility_verdict(sys, p, alpha, th);
        if (cell.verdict.classification == Classification::admissible &&
            std::isnan(smallest))
          smallest = p;
      }
      out.cells.push_back(std::move(cell));
    }
    out.boundary.emplace_back(alpha, smallest);
  }
  return out;
}

std::vector<Complex> mild_state(const DiagonalSystem& sys,
                                const std::function<double(double)>& input,
                                double tau, std::span<const Complex> x0,
                                double tol) {
  if (!(tau > 0.0)) throw std::invalid_argument("mild_state: tau > 0 required");
  if (!x0.empty() && x0.size() != sys.size())
    throw std::invalid_argument("mild_state: initial state length mismatch");
  std::vector<Complex> out(sys.size());
  for (size_t k = 0; k < sys.size(); ++k) {
    const Complex l = sys.eigenvalues[k];
    Complex state = x0.empty() ? Complex{0.0, 0.0}
                               : std::exp(l * tau) * x0[k];
    auto integrand = [&input, l, tau](double t) -> Complex {
      return std::exp(l * (tau - t)) * input(t);
    };
    auto r = quad::integrate_complex(std::function<Complex(double)>(integrand),
                                     0.0, tau, {tol, 20000});
    if (!r.converged)
      throw NumericError("mild_state: component quadrature failed at k = " +
                         std::to_string(k + 1));
    out[k] = state + sys.coefficients[k] * r.value;
  }
  return out;
}

namespace {
double ellq_norm(const std::vector<Complex>& v, double q) {
  double acc = 0.0;
  for (const auto& c : v) acc += std::pow(std::abs(c), q);
  return std::pow(acc, 1.0 / q);
}
}  // namespace

InfiniteTimeState infinite_time_map(const DiagonalSystem& sys,
                                    const std::function<double(double)>& input,
                                    double tol) {
  InfiniteTimeState out;
  out.components.resize(sys.size());
  for (size_t k = 0; k < sys.size(); ++k)
    out.components[k] =
        sys.coefficients[k] * laplace_at(input, -sys.eigenvalues[k], tol);
  out.norm = ellq_norm(out.components, sys.state_exponent);
  return out;
}

InfiniteTimeState infinite_time_map(const DiagonalSystem& sys,
                                    const ExpPowerFunction& input) {
  InfiniteTimeState out;
  out.components.resize(sys.size());
  for (size_t k = 0; k < sys.size(); ++k)
    out.components[k] = sys.coefficients[k] * input.laplace(-sys.eigenvalues[k]);
  out.norm = ellq_norm(out.components, sys.state_exponent);
  return out;
}

EmpiricalAdmissibility empirical_admissibility(
    const DiagonalSystem& sys, double p, double alpha,
    std::span<const ExpPowerFunction> family) {
  if (!(p > 1.0)) throw std::invalid_argument("empirical_admissibility: p > 1");
  EmpiricalAdmissibility out;
  for (const auto& f : family) {
    TableRow row;
    row.level = f.rate;
    try {
      row.rhs = lpw_norm_exppower(f, p, alpha);
    } catch (const NumericError&) {
      row.skipped = true;
      row.note = "input norm diverges";
      ++out.skipped;
      out.rows.push_back(row);
      continue;
    }
    row.lhs = infinite_time_map(sys, f).norm;
    row.ratio = row.lhs / row.rhs;
    if (row.ratio > out.sup_ratio) {
      out.sup_ratio = row.ratio;
      out.attained_rate = f.rate;
    }
    out.rows.push_back(row);
  }
  return out;
}

std::vector<ExpPowerFunction> default_input_family(const DiagonalSystem& sys,
                                                   double p, double alpha) {
  const double beta = -alpha / (p - 1.0);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (const auto& l : sys.eigenvalues) {
    rmin = std::min(rmin, -l.real());
    rmax = std::max(rmax, -l.real());
  }
  std::vector<ExpPowerFunction> fam;
  if (!(rmax > 0.0)) return fam;
  const int j_lo = static_cast<int>(std::floor(std::log2(rmin))) - 2;
  const int j_hi = static_cast<int>(std::ceil(std::log2(rmax))) + 2;
  for (int j = j_lo; j <= j_hi; ++j)
    fam.push_back({beta, std::ldexp(1.0, j)});
  return fam;
}

}  // namespace lcadm
