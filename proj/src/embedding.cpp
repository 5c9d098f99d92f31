#include "lcadm/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcadm/laplace.hpp"
#include "lcadm/quadrature.hpp"

namespace lcadm {

EmbeddingProblem::EmbeddingProblem(double p_, double q_, Weight w,
                                   PlaneMeasure mu)
    : p(p_), q(q_), weight(std::move(w)), measure(std::move(mu)) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("EmbeddingProblem: p must lie in (1, inf)");
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::invalid_argument("EmbeddingProblem: q must lie in [1, inf)");
}

double criterion_exponent(double p, double q, double alpha) {
  const double pc = conjugate_exponent(p);
  return (q / pc) * (1.0 - alpha / (p - 1.0));
}

namespace {

// integral e^{-p' t x} w(t)^{-1/(p-1)} dt; nullopt when divergent.
std::optional<double> dual_weight_integral(const Weight& w, double p, double x,
                                           double tol) {
  const double pc = conjugate_exponent(p);
  if (w.is_power()) {
    const double s = w.power_alpha() / (p - 1.0);
    if (!(1.0 - s > 0.0)) return std::nullopt;
    return gamma_fn(1.0 - s) * std::pow(x * pc, s - 1.0);
  }
  auto r = integrate_halfline(
      [&w, p, pc, x](double t) {
        return std::exp(-pc * t * x) * std::pow(w(t), -1.0 / (p - 1.0));
      },
      tol);
  if (!r.converged) return std::nullopt;
  return r.value;
}

void require_positive_axis_support(const PlaneMeasure& mu) {
  if (!mu.is_atomic())
    throw std::invalid_argument("check requires an atomic measure");
  for (const auto& a : mu.atoms())
    if (a.location.imag() != 0.0 || !(a.location.real() > 0.0))
      throw std::invalid_argument(
          "check requires the measure to be supported on (0, inf)");
}

struct SortedAtoms {
  std::vector<double> re;      // ascending
  std::vector<double> prefix;  // cumulative masses, prefix[i] = sum of re <= re[i]
  double mass_upto(double x) const {
    auto it = std::upper_bound(re.begin(), re.end(), x);
    if (it == re.begin()) return 0.0;
    return prefix[static_cast<size_t>(it - re.begin()) - 1];
  }
};

SortedAtoms sort_by_re(const PlaneMeasure& mu) {
  std::vector<std::pair<double, double>> rm;
  rm.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) rm.emplace_back(a.location.real(), a.mass);
  std::sort(rm.begin(), rm.end());
  SortedAtoms out;
  double acc = 0.0;
  for (const auto& [r, m] : rm) {
    acc += m;
    if (!out.re.empty() && out.re.back() == r) {
      out.prefix.back() = acc;
    } else {
      out.re.push_back(r);
      out.prefix.push_back(acc);
    }
  }
  return out;
}

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

}  // namespace

RatioTable necessary_interval_check(const EmbeddingProblem& prob,
                                    std::span<const double> lengths,
                                    double tol) {
  require_positive_axis_support(prob.measure);
  const double qc_over_pc = prob.q / prob.p_conj();
  auto sorted = sort_by_re(prob.measure);
  RatioTable out;
  for (double L : lengths) {
    if (!(L > 0.0))
      throw std::invalid_argument("necessary_interval_check: lengths must be > 0");
    TableRow row;
    row.level = L;
    row.lhs = sorted.mass_upto(L);
    auto integral = dual_weight_integral(prob.weight, prob.p, L, tol);
    if (!integral) {
      row.skipped = true;
      row.note = "dual weight integral diverges";
      ++out.skipped;
    } else {
      row.rhs = std::pow(*integral, -qc_over_pc);
      row.ratio = row.lhs * std::pow(*integral, qc_over_pc);
      if (row.ratio > out.sup_ratio) {
        out.sup_ratio = row.ratio;
        out.attained = L;
      }
    }
    out.rows.push_back(row);
  }
  return out;
}

StripCheck sufficient_strip_check(const EmbeddingProblem& prob,
                                  std::span<const double> partition,
                                  double tol) {
  if (partition.size() < 2)
    throw std::invalid_argument("sufficient_strip_check: need at least two points");
  for (size_t i = 0; i < partition.size(); ++i) {
    if (!(partition[i] > 0.0))
      throw std::invalid_argument("sufficient_strip_check: points must be > 0");
    if (i > 0 && !(partition[i] > partition[i - 1]))
      throw std::invalid_argument("sufficient_strip_check: points must increase");
  }
  if (!prob.measure.is_atomic())
    throw std::invalid_argument("sufficient_strip_check: atomic measures only");
  const double qc_over_pc = prob.q / prob.p_conj();

  StripCheck out;
  for (size_t n = 0; n + 1 < partition.size(); ++n) {
    StripCheck::Row row;
    row.x_lo = partition[n];
    row.x_hi = partition[n + 1];
    row.mass = plane_mass(prob.measure, Strip(row.x_lo, row.x_hi));
    auto integral = dual_weight_integral(prob.weight, prob.p, row.x_lo, tol);
    if (!integral) {
      row.diverged = true;
      out.all_finite = false;
    } else {
      row.integral = *integral;
      row.c = row.mass * std::pow(*integral, qc_over_pc);
      out.sum += std::abs(row.c);
    }
    out.rows.push_back(row);
  }
  for (const auto& a : prob.measure.atoms())
    if (a.location.real() <= partition.front() ||
        a.location.real() > partition.back())
      out.uncovered_mass += a.mass;
  out.norm_bound = std::pow(out.sum, 1.0 / prob.q);
  return out;
}

SectorialResult sectorial_criterion(const EmbeddingProblem& prob, double theta,
                                    int j_lo, int j_hi) {
  if (!(prob.p <= prob.q))
    throw std::invalid_argument("sectorial_criterion: requires p <= q");
  if (!prob.weight.is_power())
    throw std::invalid_argument("sectorial_criterion: requires a power weight");
  const double alpha = prob.weight.power_alpha();
  if (!(alpha < prob.p - 1.0))
    throw std::invalid_argument("sectorial_criterion: requires alpha < p - 1");
  if (j_hi < j_lo)
    throw std::invalid_argument("sectorial_criterion: empty dyadic range");
  Sector sector(theta);
  if (!prob.measure.is_atomic())
    throw std::invalid_argument("sectorial_criterion: atomic measures only");
  for (const auto& a : prob.measure.atoms())
    if (!sector.contains(a.location))
      throw std::invalid_argument(
          "sectorial_criterion: atom outside the sector at Re = " +
          std::to_string(a.location.real()));

  SectorialResult out;
  out.beta = criterion_exponent(prob.p, prob.q, alpha);
  auto sorted = sort_by_re(prob.measure);

  std::vector<std::pair<double, double>> logpts;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double len = std::ldexp(1.0, j);
    TableRow row;
    row.level = len;
    row.lhs = sorted.mass_upto(len);
    row.ratio = row.lhs * std::pow(len, -out.beta);
    out.rows.push_back(row);
    if (row.lhs > 0.0)
      logpts.emplace_back(static_cast<double>(j), std::log2(row.ratio));
  }

  // The sup over every truncation length in range is attained at an atom
  // abscissa (the mass is a right-continuous step function of the length and
  // the denominator grows), so refine the dyadic scan at the thresholds.
  const double cap = std::ldexp(1.0, j_hi);
  for (size_t i = 0; i < sorted.re.size(); ++i) {
    const double r = sorted.re[i];
    if (r > cap) break;
    const double ratio = sorted.prefix[i] * std::pow(r, -out.beta);
    if (ratio > out.sup_ratio) {
      out.sup_ratio = ratio;
      out.attained_length = r;
    }
  }
  out.attained_level =
      out.attained_length > 0.0
          ? static_cast<int>(std::ceil(std::log2(out.attained_length)))
          : j_lo;

  out.levels_fitted = static_cast<int>(logpts.size());
  if (logpts.size() >= 2) {
    const size_t half = logpts.size() / 2;
    out.slope = fit_slope(std::span(logpts).subspan(half));
    const size_t last = logpts.size() > 10 ? logpts.size() - 10 : 0;
    out.slope_last10 = fit_slope(std::span(logpts).subspan(last));
  }
  return out;
}

std::pair<int, int> default_dyadic_range(const PlaneMeasure& mu) {
  int lo = -20, hi = 40;
  if (mu.is_atomic() && !mu.atoms().empty()) {
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& a : mu.atoms()) {
      rmin = std::min(rmin, a.location.real());
      rmax = std::max(rmax, a.location.real());
    }
    if (rmin > 0.0) lo = std::max(lo, static_cast<int>(std::floor(std::log2(rmin))));
    if (rmax > 0.0) hi = std::min(hi, static_cast<int>(std::ceil(std::log2(rmax))));
    if (hi < lo) hi = lo;
  }
  return {lo, hi};
}

LowerBoundResult embedding_lower_bound(const EmbeddingProblem& prob,
                                       double theta,
                                       std::span<const double> rates) {
  if (!prob.weight.is_power())
    throw std::invalid_argument("embedding_lower_bound: requires a power weight");
  const double alpha = prob.weight.power_alpha();
  if (!(alpha < prob.p - 1.0))
    throw std::invalid_argument("embedding_lower_bound: requires alpha < p - 1");
  if (!prob.measure.is_atomic())
    throw std::invalid_argument("embedding_lower_bound: atomic measures only");
  Sector sector(theta);
  for (const auto& a : prob.measure.atoms())
    if (!sector.contains(a.location))
      throw std::invalid_argument("embedding_lower_bound: atom outside the sector");

  LowerBoundResult out;
  const double beta_f = -alpha / (prob.p - 1.0);
  for (double a : rates) {
    if (!(a > 0.0))
      throw std::invalid_argument("embedding_lower_bound: rates must be > 0");
    ExpPowerFunction f{beta_f, a};
    const double denom = lpw_norm_exppower(f, prob.p, alpha);
    const double numer = lq_norm_of_laplace(
        prob.measure, prob.q, [&f](Complex z) { return f.laplace(z); });
    TableRow row;
    row.level = a;
    row.lhs = numer;
    row.rhs = denom;
    row.ratio = numer / denom;
    out.rows.push_back(row);
    if (row.ratio > out.value) {
      out.value = row.ratio;
      out.attained_rate = a;
    }
  }
  return out;
}

ApSpaceSpec::ApSpaceSpec(double p_, std::vector<RadialMeasure> comps)
    : p(p_), components(std::move(comps)) {
  if (!(p >= 1.0)) throw std::invalid_argument("ApSpaceSpec: p >= 1 required");
  if (components.empty())
    throw std::invalid_argument("ApSpaceSpec: needs at least one component");
  auto grid = default_delta2_grid();
  for (const auto& c : components) {
    try {
      doubling.push_back(delta2_ratio(c, grid));
    } catch (const std::invalid_argument&) {
      doubling.push_back({});  // vanishing on the grid; recorded as empty
    }
  }
}

RatioTable square_necessary_check(const ApSpaceSpec& space, double q,
                                  const PlaneMeasure& mu,
                                  std::span<const Complex> centers) {
  RatioTable out;
  for (Complex a : centers) {
    CarlesonSquare square(a);
    TableRow row;
    row.level = a.real();
    row.lhs = plane_mass(mu, square);
    double sum = 0.0;
    double scale = 1.0;
    for (const auto& nu : space.components) {
      sum += nu.mass_upto(2.0 * a.real()) * 2.0 * a.real() / scale;
      scale *= std::pow(a.real(), space.p);
    }
    if (!(sum > 0.0)) {
      row.skipped = true;
      row.note = "space side vanishes on this square";
      ++out.skipped;
    } else {
      row.rhs = std::pow(sum, q / space.p);
      row.ratio = row.lhs / row.rhs;
      if (row.ratio > out.sup_ratio) {
        out.sup_ratio = row.ratio;
        out.attained = a.real();
      }
    }
    out.rows.push_back(row);
  }
  return out;
}

BesovWeight BesovWeight::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("BesovWeight: must be positive");
  BesovWeight w;
  w.rho = [c](Complex) { return c; };
  w.growth_power = 0.0;
  w.growth_coef = c;
  return w;
}

RatioTable tree_sufficient_check(const PlaneMeasure& mu, double p, double q,
                                 const BesovWeight& rho,
                                 std::span<const Complex> centers, double tol) {
  if (!(p > 1.0) || !(p <= q))
    throw std::invalid_argument("tree_sufficient_check: requires 1 < p <= q");
  if (!mu.is_atomic())
    throw std::invalid_argument("tree_sufficient_check: atomic measures only");
  const double pc = conjugate_exponent(p);
  const double qc = conjugate_exponent(q);

  RatioTable out;
  for (Complex a : centers) {
    CarlesonSquare square(a);
    TableRow row;
    row.level = a.real();
    const double mass_a = plane_mass(mu, square);
    row.rhs = mass_a;
    if (!(mass_a > 0.0)) {
      row.skipped = true;
      row.note = "square carries no mass";
      ++out.skipped;
      out.rows.push_back(row);
      continue;
    }
    std::vector<PlaneAtom> inside;
    double re_min = std::numeric_limits<double>::infinity();
    for (const auto& atom : mu.atoms())
      if (square.contains(atom.location)) {
        inside.push_back(atom);
        re_min = std::min(re_min, atom.location.real());
      }
    if (!(re_min > 0.0)) {
      row.skipped = true;
      row.note = "atom on the imaginary axis makes the overlap integral diverge";
      ++out.skipped;
      out.rows.push_back(row);
      continue;
    }

    const double y_lo = a.imag() - a.real();
    const double y_hi = a.imag() + a.real();
    // For fixed x the overlap mass is piecewise constant in y with cuts at
    // Im(atom) +- x; integrate each y-piece, then integrate over x.
    auto inner = [&](double x) -> double {
      std::vector<double> cuts{y_lo, y_hi};
      for (const auto& atom : inside)
        if (atom.location.real() < 2.0 * x) {
          for (double c : {atom.location.imag() - x, atom.location.imag() + x})
            if (c > y_lo && c < y_hi) cuts.push_back(c);
        }
      std::sort(cuts.begin(), cuts.end());
      double acc = 0.0;
      for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        double overlap = 0.0;
        for (const auto& atom : inside)
          if (atom.location.real() < 2.0 * x &&
              std::abs(atom.location.imag() - mid) <= x)
            overlap += atom.mass;
        if (!(overlap > 0.0)) continue;
        auto segp = quad::integrate(
            [&rho, x, pc](double y) {
              return std::pow(rho.rho(Complex(x, y)), 1.0 - pc);
            },
            cuts[i], cuts[i + 1], {tol * 0.1, 2000});
        acc += std::pow(overlap, pc) * segp.value;
      }
      return acc / (x * x);
    };

    std::vector<double> breaks;
    for (const auto& atom : inside) breaks.push_back(atom.location.real() / 2.0);
    breaks.push_back(2.0 * a.real());
    std::sort(breaks.begin(), breaks.end());
    std::vector<std::pair<double, double>> panels;
    for (size_t i = 0; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] > breaks[i]) panels.emplace_back(breaks[i], breaks[i + 1]);
    auto integral = quad::integrate_panels(inner, panels, {tol, 20000});
    if (!integral.converged) {
      row.skipped = true;
      row.note = "overlap quadrature did not converge";
      ++out.skipped;
      out.rows.push_back(row);
      continue;
    }
    row.lhs = std::pow(integral.value, qc / pc);
    row.ratio = row.lhs / mass_a;
    if (row.ratio > out.sup_ratio) {
      out.sup_ratio = row.ratio;
      out.attained = a.real();
    }
    out.rows.push_back(row);
  }
  return out;
}

BesovEnergy besov_energy(std::span<const std::pair<double, ExpPowerFunction>> terms,
                         double p, const BesovWeight& rho, double tol) {
  if (!(p > 1.0)) throw std::invalid_argument("besov_energy: p > 1 required");
  BesovEnergy out;
  if (terms.empty()) {
    out.converged = true;
    return out;
  }

  auto dF = [&terms](Complex z) {
    Complex acc{0.0, 0.0};
    for (const auto& [c, f] : terms)
      acc -= c * gamma_fn(f.beta + 2.0) * std::pow(z + f.rate, -(f.beta + 2.0));
    return acc;
  };
  auto integrand = [&](double x, double y) {
    const Complex z(x, y);
    return std::pow(std::abs(dF(z)), p) * std::pow(x, p - 2.0) * rho.rho(z);
  };

  // Decay data for the analytic tail: |F'(z)| <= C2 |z|^-e past R0.
  double e = std::numeric_limits<double>::infinity();
  double c_sum = 0.0;
  double a_max = 0.0;
  for (const auto& [c, f] : terms) {
    e = std::min(e, f.beta + 2.0);
    c_sum += std::abs(c) * gamma_fn(f.beta + 2.0);
    a_max = std::max(a_max, f.rate);
  }
  const double s = rho.growth_power;
  const double c_rho = rho.growth_coef;
  const double c2p = std::pow(c_sum * std::pow(2.0, e), p);
  const double r0 = std::max(1.0, 2.0 * a_max);
  auto tail_at = [&](double R) -> double {
    constexpr double pi = std::numbers::pi;
    if (p >= 2.0) {
      const double expo = -e * p + p - 1.0 + s;
      if (!(expo < -1.0)) return std::numeric_limits<double>::infinity();
      return c2p * c_rho * std::pow(2.0, s) * pi * std::pow(R, expo + 1.0) /
             (-expo - 1.0);
    }
    // 1 < p < 2: the vertical sliver near the imaginary axis is bounded
    // separately since (Re z)^(p-2) blows up there.
    const double exp_a = -e * p + s + 1.0;
    const double exp_b = -e * p + s;
    if (!(exp_a < -1.0) || !(exp_b < -1.0))
      return std::numeric_limits<double>::infinity();
    const double piece_a = c2p * c_rho * std::pow(2.0, s) *
                           std::pow(R / 2.0, p - 2.0) * pi *
                           std::pow(R / 2.0, exp_a + 1.0) / (-exp_a - 1.0);
    const double piece_b = c2p * c_rho * std::pow(2.0, s) *
                           std::pow(R / 2.0, p - 1.0) / (p - 1.0) * 2.0 *
                           std::pow(R / std::sqrt(2.0), exp_b + 1.0) /
                           (-exp_b - 1.0);
    return piece_a + piece_b;
  };

  auto box_integral = [&](double R) -> quad::Outcome {
    auto outer = [&](double x) {
      auto r = quad::integrate(
          [&](double y) { return integrand(x, y); }, -R, R, {tol * 0.2, 4000});
      return r.value;
    };
    std::vector<std::pair<double, double>> panels;
    double top = R;
    for (int j = 0; j < 42; ++j) {
      double bot = (j == 41) ? 0.0 : top * 0.5;
      panels.emplace_back(bot, top);
      top = bot;
    }
    return quad::integrate_panels(outer, panels, {tol, 4000});
  };

  double R = std::max(8.0, 2.0 * r0);
  auto first = box_integral(R);
  const double scale = std::max(std::abs(first.value), 1e-300);
  while (tail_at(R) > 0.5 * tol * scale && R < 1e7) R *= 2.0;
  auto final_pass = (R > std::max(8.0, 2.0 * r0)) ? box_integral(R) : first;

  out.value = final_pass.value;
  out.radius = R;
  out.tail_bound = tail_at(R);
  out.converged = final_pass.converged && std::isfinite(out.tail_bound) &&
                  out.tail_bound <= tol * std::max(std::abs(out.value), 1e-300);
  return out;
}

RatioTable a2m_sectorial_check(const ApSpaceSpec& space, const PlaneMeasure& mu,
                               double theta, double base_length, int k_lo,
                               int k_hi) {
  if (space.p != 2.0)
    throw std::invalid_argument("a2m_sectorial_check: the space exponent must be 2");
  if (!(theta > 0.0)) throw std::invalid_argument("a2m_sectorial_check: theta in (0, pi/2)");
  Sector sector(theta);
  if (mu.is_atomic())
    for (const auto& a : mu.atoms())
      if (!sector.contains(a.location))
        throw std::invalid_argument("a2m_sectorial_check: atom outside the sector");
  if (!(base_length > 0.0))
    throw std::invalid_argument("a2m_sectorial_check: base length must be > 0");

  RatioTable out;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double L = std::ldexp(base_length, k);
    TableRow row;
    row.level = L;
    row.lhs = plane_mass(mu, CarlesonSquare(Complex(L, 0.0)));
    const double nu0 = space.components.front().mass_below(2.0 * L) * 2.0 * L;
    double sum = 0.0;
    double scale = 1.0;
    for (const auto& nu : space.components) {
      sum += nu.mass_below(2.0 * L) * 2.0 * L / scale;
      scale *= L * L;
    }
    if (!(nu0 > 0.0) || !(sum > 0.0)) {
      row.skipped = true;
      row.note = "space side vanishes on this square";
      ++out.skipped;
      out.rows.push_back(row);
      continue;
    }
    const double bracket = std::pow(nu0, -0.5) + std::pow(sum, -0.5);
    row.rhs = std::pow(bracket, -2.0);
    row.ratio = row.lhs / row.rhs;
    if (row.ratio > out.sup_ratio) {
      out.sup_ratio = row.ratio;
      out.attained = L;
    }
    out.rows.push_back(row);
  }
  return out;
}

double lq_norm_of_laplace(const PlaneMeasure& mu, double q,
                          const std::function<Complex(Complex)>& transform) {
  if (!mu.is_atomic())
    throw std::invalid_argument("lq_norm_of_laplace: atomic measures only");
  double acc = 0.0;
  for (const auto& a : mu.atoms())
    acc += a.mass * std::pow(std::abs(transform(a.location)), q);
  return std::pow(acc, 1.0 / q);
}

}  // namespace lcadm
