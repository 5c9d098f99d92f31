#include "lcadm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcadm {

Weight Weight::power(double alpha) {
  Weight w;
  w.rep_ = Power{alpha};
  return w;
}

Weight Weight::zen(std::vector<RadialMeasure> components) {
  if (components.empty())
    throw std::invalid_argument("Weight::zen: needs at least one component");
  Weight w;
  w.rep_ = Zen{std::move(components)};
  return w;
}

Weight Weight::table(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size() || knots.empty())
    throw std::invalid_argument("Weight::table: knots/values size mismatch");
  for (size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] > 0.0) || !(values[i] > 0.0))
      throw std::invalid_argument("Weight::table: knots and values must be positive");
    if (i > 0 && !(knots[i] > knots[i - 1]))
      throw std::invalid_argument("Weight::table: knots must be strictly increasing");
  }
  Weight w;
  w.rep_ = Table{std::move(knots), std::move(values)};
  return w;
}

double Weight::operator()(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("Weight: evaluation needs t > 0");
  if (const auto* p = std::get_if<Power>(&rep_)) return std::pow(t, p->alpha);
  if (const auto* z = std::get_if<Zen>(&rep_)) {
    double acc = 0.0;
    double t2n = 1.0;
    for (const auto& nu : z->components) {
      acc += t2n * nu.laplace(2.0 * t);
      t2n *= t * t;
    }
    const double v = 2.0 * std::numbers::pi * acc;
    if (!(v > 0.0))
      throw NumericError("Weight::zen: weight not positive at t = " + std::to_string(t));
    return v;
  }
  if (const auto* tab = std::get_if<Table>(&rep_)) {
    const auto& k = tab->knots;
    const auto& v = tab->values;
    if (t <= k.front()) return v.front();
    if (t >= k.back()) return v.back();
    auto it = std::upper_bound(k.begin(), k.end(), t);
    const size_t i = static_cast<size_t>(it - k.begin()) - 1;
    const double s = (std::log(t) - std::log(k[i])) / (std::log(k[i + 1]) - std::log(k[i]));
    return v[i] + s * (v[i + 1] - v[i]);
  }
  const auto& po = std::get<PowerOf>(rep_);
  return std::pow((*po.base)(t), po.exponent);
}

Weight Weight::pow(double s) const {
  if (const auto* p = std::get_if<Power>(&rep_)) return power(p->alpha * s);
  if (const auto* tab = std::get_if<Table>(&rep_)) {
    std::vector<double> values = tab->values;
    for (double& v : values) v = std::pow(v, s);
    return table(tab->knots, std::move(values));
  }
  if (const auto* po = std::get_if<PowerOf>(&rep_)) {
    Weight w;
    w.rep_ = PowerOf{po->base, po->exponent * s};
    return w;
  }
  Weight w;
  w.rep_ = PowerOf{std::make_shared<Weight>(*this), s};
  return w;
}

bool Weight::is_power() const { return std::holds_alternative<Power>(rep_); }

double Weight::power_alpha() const {
  if (const auto* p = std::get_if<Power>(&rep_)) return p->alpha;
  throw std::invalid_argument("Weight: not a power weight");
}

const std::vector<RadialMeasure>* Weight::zen_components() const {
  if (const auto* z = std::get_if<Zen>(&rep_)) return &z->components;
  return nullptr;
}

double eval_weight(const Weight& w, double t) { return w(t); }

LpwNorm lpw_norm(const std::function<double(double)>& f, double p,
                 const Weight& w, double tol) {
  if (!(p >= 1.0)) throw std::invalid_argument("lpw_norm: p >= 1 required");
  auto integrand = [&f, &w, p](double t) {
    return std::pow(std::abs(f(t)), p) * w(t);
  };
  auto r = integrate_halfline(integrand, tol);
  LpwNorm out;
  out.converged = r.converged;
  if (r.value < 0.0) r.value = 0.0;
  out.value = std::pow(r.value, 1.0 / p);
  out.error = (r.value > 0.0)
                  ? out.value * r.error / (p * r.value)
                  : std::pow(r.error, 1.0 / p);
  return out;
}

double lpw_norm_exppower(const ExpPowerFunction& f, double p, double alpha) {
  const double e = p * f.beta + alpha;  // exponent of t in |f|^p w
  if (!(e > -1.0))
    throw NumericError("lpw_norm_exppower: integral diverges at 0");
  if (!(f.rate > 0.0))
    throw NumericError("lpw_norm_exppower: integral diverges at infinity");
  const double integral = gamma_fn(e + 1.0) * std::pow(p * f.rate, -(e + 1.0));
  return std::pow(integral, 1.0 / p);
}

DualProblem dual_problem(double p, double q, const Weight& w) {
  if (!(p > 1.0) || !std::isfinite(p) || !(q > 1.0) || !std::isfinite(q))
    throw std::invalid_argument("dual_problem: p and q must lie in (1, inf)");
  const double pc = conjugate_exponent(p);
  const double qc = conjugate_exponent(q);
  return {pc, qc, w.pow(-pc / p)};
}

}  // namespace lcadm
