#include "lcadm/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "lcadm/quadrature.hpp"

namespace lcadm {

Partition::Partition(std::vector<double> neg, std::vector<double> pos)
    : negative_knots(std::move(neg)), positive_knots(std::move(pos)) {
  for (size_t i = 0; i < negative_knots.size(); ++i) {
    const double t = negative_knots[i];
    if (!(t > 0.0) || !(t < 1.0))
      throw std::invalid_argument("Partition: negative knots must lie in (0, 1)");
    if (i > 0 && !(t < negative_knots[i - 1]))
      throw std::invalid_argument("Partition: negative knots must decrease");
  }
  if (negative_knots.empty())
    throw std::invalid_argument("Partition: needs at least one negative knot");
  if (positive_knots.empty() || positive_knots.front() != 1.0)
    throw std::invalid_argument("Partition: positive knots must start at 1");
  for (size_t i = 1; i < positive_knots.size(); ++i)
    if (!(positive_knots[i] >= positive_knots[i - 1]))
      throw std::invalid_argument("Partition: positive knots must be nondecreasing");
}

Partition Partition::standard() {
  std::vector<double> neg, pos;
  for (int k = 1; k <= 20; ++k) neg.push_back(std::ldexp(1.0, -k));
  for (int k = 0; k <= 58; ++k) pos.push_back(1.0 + 0.5 * k);
  return Partition(std::move(neg), std::move(pos));
}

namespace {

struct Maximizer {
  double t;
  double h;
};

// h(t) = e^{-t} w(t x)^{-1/p}
double h_eval(const Weight& w, double p, double x, double t) {
  return std::exp(-t) * std::pow(w(t * x), -1.0 / p);
}

Maximizer maximize(const Weight& w, double p, double x, double lo, double hi) {
  if (!(lo > 0.0))
    throw NumericError("theta: interval touches 0 where h may be unbounded");
  if (hi <= lo) return {lo, h_eval(w, p, x, lo)};
  if (w.is_power()) {
    const double alpha = w.power_alpha();
    // log h = -t - (alpha/p) log(t x): critical point at t = -alpha/p.
    double t = lo;
    if (alpha < 0.0) {
      const double tc = -alpha / p;
      t = std::clamp(tc, lo, hi);
    }
    const double h_t = h_eval(w, p, x, t);
    const double h_hi = h_eval(w, p, x, hi);
    return h_t >= h_hi ? Maximizer{t, h_t} : Maximizer{hi, h_hi};
  }
  // Coarse scan to bracket, then golden-section.
  const int scan = 33;
  int best = 0;
  double best_h = -1.0;
  auto at = [&](int i) { return lo + (hi - lo) * i / (scan - 1); };
  for (int i = 0; i < scan; ++i) {
    const double h = h_eval(w, p, x, at(i));
    if (h > best_h) {
      best_h = h;
      best = i;
    }
  }
  double a = at(std::max(best - 1, 0));
  double b = at(std::min(best + 1, scan - 1));
  const double phi = 0.6180339887498949;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double hc = h_eval(w, p, x, c), hd = h_eval(w, p, x, d);
  while (b - a > 1e-10 * std::max(1.0, hi)) {
    if (hc >= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - phi * (b - a);
      hc = h_eval(w, p, x, c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + phi * (b - a);
      hd = h_eval(w, p, x, d);
    }
  }
  const double t = 0.5 * (a + b);
  const double h = h_eval(w, p, x, t);
  if (h >= best_h) return {t, h};
  return {at(best), best_h};
}

}  // namespace

ThetaResult theta(const Partition& P, const Weight& w, double p, double x) {
  if (!(p >= 1.0)) throw std::invalid_argument("theta: p >= 1 required");
  if (!(x > 0.0)) throw std::invalid_argument("theta: x > 0 required");
  ThetaResult out;
  if (w.is_power() && w.power_alpha() > 0.0)
    out.warning =
        "power weight with alpha > 0: the untruncated sum diverges as knots "
        "approach 0; value is a finite-partition partial sum";

  double acc = 0.0;
  double prev_term = -1.0;
  // k = -1, -2, ...: intervals [t_k, t_{k+1}] with weight (1 - t_k).
  for (size_t j = 0; j < P.negative_knots.size(); ++j) {
    const double lo = P.negative_knots[j];
    const double hi = (j == 0) ? 1.0 : P.negative_knots[j - 1];
    auto m = maximize(w, p, x, lo, hi);
    const double weight = 1.0 - lo;
    out.star_points.push_back({lo, hi, m.t, m.h, weight});
    const double term = m.h * weight;
    acc += term;
    if (j + 1 == P.negative_knots.size() && j > 0)
      out.negative_tail_decreasing = term <= prev_term;
    prev_term = term;
  }
  prev_term = -1.0;
  for (size_t k = 0; k + 1 < P.positive_knots.size(); ++k) {
    const double lo = P.positive_knots[k];
    const double hi = P.positive_knots[k + 1];
    auto m = maximize(w, p, x, lo, hi);
    const double weight = hi - 1.0;
    out.star_points.push_back({lo, hi, m.t, m.h, weight});
    const double term = m.h * weight;
    acc += term;
    if (k + 2 == P.positive_knots.size() && k > 0)
      out.positive_tail_decreasing = term <= prev_term;
    prev_term = term;
  }
  out.value = 2.0 * acc;
  return out;
}

double maximal_function(const std::function<double(double)>& g, double x,
                        std::span<const double> radii) {
  double best = 0.0;
  for (double r : radii) {
    if (!(r > 0.0))
      throw std::invalid_argument("maximal_function: radii must be positive");
    const double lo = x - r, hi = x + r;
    auto abs_g = [&g](double u) { return std::abs(g(u)); };
    std::vector<std::pair<double, double>> panels;
    if (lo < 0.0 && hi > 0.0) {
      panels.emplace_back(lo, 0.0);
      // graded mesh into a possible endpoint singularity at 0
      double top = hi;
      for (int j = 0; j < 42; ++j) {
        double bot = (j == 41) ? 0.0 : top * 0.5;
        panels.emplace_back(bot, top);
        top = bot;
      }
    } else {
      panels.emplace_back(lo, hi);
    }
    auto q = quad::integrate_panels(abs_g, panels, {1e-11, 20000});
    if (!q.converged)
      throw NumericError("maximal_function: window quadrature failed at r = " +
                         std::to_string(r));
    best = std::max(best, q.value / (2.0 * r));
  }
  return best;
}

std::vector<double> default_radii(double x) {
  std::vector<double> r;
  for (int j = -48; j <= 32; ++j) r.push_back(x * std::pow(2.0, j / 4.0));
  return r;
}

EstimateCheck verify_estimate(const std::function<double(double)>& f,
                              const Weight& w, double p, double x,
                              const Partition& P) {
  EstimateCheck out;
  out.theta = theta(P, w, p, x);

  auto lhs_integrand = [&f, x](double t) { return std::exp(-t / x) * std::abs(f(t)); };
  auto lhs = integrate_halfline(lhs_integrand, 1e-10);
  if (!lhs.converged) throw NumericError("verify_estimate: left side diverges");
  out.lhs = lhs.value;

  auto g = [&f, &w, p](double u) {
    if (u <= 0.0) return 0.0;
    return std::pow(w(u), 1.0 / p) * f(u);
  };

  // The grid maximal value only underestimates Mg, so refine before reporting
  // a violation.
  for (int round = 0;; ++round) {
    std::vector<double> radii;
    const int per_octave = 4 << round;
    const int span = 48 + 16 * round;
    for (int j = -span; j <= span / 2 + 16; ++j)
      radii.push_back(x * std::pow(2.0, static_cast<double>(j) / per_octave));
    const double mg = maximal_function(g, x, radii);
    out.rhs = out.theta.value * x * mg;
    out.refinements = round;
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
    if (out.holds || round >= 2) break;
  }
  return out;
}

}  // namespace lcadm
