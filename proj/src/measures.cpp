#include "lcadm/measures.hpp"

#include <algorithm>
#include <cmath>

#include "lcadm/laplace.hpp"

namespace lcadm {

RadialMeasure::RadialMeasure(std::vector<RadialAtom> atoms,
                             std::vector<RadialDensity> densities)
    : atoms_(std::move(atoms)), densities_(std::move(densities)) {
  for (const auto& a : atoms_)
    if (!(a.radius >= 0.0) || !(a.mass > 0.0))
      throw std::invalid_argument("RadialMeasure: atom needs radius >= 0, mass > 0");
  for (const auto& d : densities_) {
    if (!(d.gamma > -1.0) || !(d.coef > 0.0))
      throw std::invalid_argument("RadialMeasure: density needs gamma > -1, coef > 0");
    if (!(d.lo >= 0.0) || !(d.hi > d.lo))
      throw std::invalid_argument("RadialMeasure: density support must be an interval in [0, inf)");
  }
}

RadialMeasure RadialMeasure::atom(double radius, double mass) {
  return RadialMeasure({{radius, mass}}, {});
}

RadialMeasure RadialMeasure::power_density(double gamma, double coef) {
  return RadialMeasure({}, {{gamma, coef}});
}

RadialMeasure RadialMeasure::lebesgue(double coef) {
  return power_density(0.0, coef);
}

namespace {
double density_mass(const RadialDensity& d, double upto) {
  const double hi = std::min(upto, d.hi);
  if (!(hi > d.lo)) return 0.0;
  const double e = d.gamma + 1.0;
  return d.coef * (std::pow(hi, e) - std::pow(d.lo, e)) / e;
}
}  // namespace

double RadialMeasure::mass_below(double r) const {
  double m = 0.0;
  for (const auto& a : atoms_)
    if (a.radius < r) m += a.mass;
  for (const auto& d : densities_) m += density_mass(d, r);
  return m;
}

double RadialMeasure::mass_upto(double r) const {
  double m = 0.0;
  for (const auto& a : atoms_)
    if (a.radius <= r) m += a.mass;
  for (const auto& d : densities_) m += density_mass(d, r);
  return m;
}

double RadialMeasure::laplace(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("RadialMeasure::laplace: s > 0");
  double v = 0.0;
  for (const auto& a : atoms_) v += a.mass * std::exp(-s * a.radius);
  for (const auto& d : densities_) {
    if (d.lo == 0.0 && std::isinf(d.hi)) {
      v += d.coef * gamma_fn(d.gamma + 1.0) * std::pow(s, -(d.gamma + 1.0));
      continue;
    }
    // Clipped piece: integrate where the exponential is non-negligible.
    const double cut = std::min(d.hi, d.lo + 720.0 / s);
    if (!(cut > d.lo)) continue;
    auto f = [&d, s](double r) { return d.coef * std::pow(r, d.gamma) * std::exp(-s * r); };
    std::vector<std::pair<double, double>> panels;
    if (d.lo == 0.0 && d.gamma < 0.0) {
      double hi = cut;
      for (int j = 0; j < 42; ++j) {
        double lo = (j == 41) ? 0.0 : hi * 0.5;
        panels.emplace_back(lo, hi);
        hi = lo;
      }
    } else {
      panels.emplace_back(d.lo, cut);
    }
    auto r = quad::integrate_panels(f, panels, {1e-12, 20000});
    if (!r.converged)
      throw NumericError("RadialMeasure::laplace: clipped density quadrature failed");
    v += r.value;
  }
  return v;
}

double radial_mass(const RadialMeasure& nu, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radial_mass: r > 0 required");
  return nu.mass_below(r);
}

Delta2Result delta2_ratio(const RadialMeasure& nu, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("delta2_ratio: empty grid");
  Delta2Result out;
  for (double r : grid) {
    if (!(r > 0.0)) throw std::invalid_argument("delta2_ratio: grid points must be > 0");
    Delta2Row row{};
    row.r = r;
    row.mass_r = nu.mass_below(r);
    row.mass_2r = nu.mass_below(2.0 * r);
    row.skipped = !(row.mass_r > 0.0);
    if (row.skipped) {
      ++out.skipped;
    } else {
      row.ratio = row.mass_2r / row.mass_r;
      if (row.ratio > out.sup_ratio) {
        out.sup_ratio = row.ratio;
        out.attained_r = r;
      }
    }
    out.table.push_back(row);
  }
  if (out.skipped == static_cast<int>(grid.size()))
    throw std::invalid_argument("delta2_ratio: measure vanishes on the whole grid");
  return out;
}

std::vector<double> default_delta2_grid() {
  std::vector<double> g;
  for (int j = -20; j <= 20; ++j) g.push_back(std::ldexp(1.0, j));
  return g;
}

PlaneMeasure PlaneMeasure::atomic(std::vector<PlaneAtom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.location.real() >= 0.0))
      throw std::invalid_argument("PlaneMeasure: atom needs Re >= 0");
    if (!(a.mass > 0.0))
      throw std::invalid_argument("PlaneMeasure: atom mass must be > 0");
  }
  PlaneMeasure m;
  m.rep_ = Atomic{std::move(atoms)};
  return m;
}

PlaneMeasure PlaneMeasure::product(RadialMeasure radial) {
  PlaneMeasure m;
  m.rep_ = Product{std::move(radial)};
  return m;
}

const std::vector<PlaneAtom>& PlaneMeasure::atoms() const {
  if (!is_atomic())
    throw std::invalid_argument("PlaneMeasure: not an atomic measure");
  return std::get<Atomic>(rep_).atoms;
}

const RadialMeasure& PlaneMeasure::radial() const {
  if (is_atomic())
    throw std::invalid_argument("PlaneMeasure: not a product measure");
  return std::get<Product>(rep_).radial;
}

double PlaneMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms()) m += a.mass;
  return m;
}

namespace {

bool on_boundary(const CarlesonSquare& q, Complex z) {
  const double r = q.center.real();
  const double dy = std::abs(z.imag() - q.center.imag());
  const bool x_in = z.real() >= 0.0 && z.real() <= 2.0 * r;
  if ((z.real() == 0.0 || z.real() == 2.0 * r) && dy <= r) return true;
  return x_in && dy == r;
}

bool on_boundary(const Sector& s, Complex z) {
  if (s.theta == 0.0) return false;
  return z.real() > 0.0 && std::abs(std::arg(z)) == s.theta;
}

bool on_boundary(const SectorTruncation& t, Complex z) {
  if (on_boundary(Sector(t.theta), z)) return z.real() <= t.length;
  return Sector(t.theta).contains(z) && z.real() == t.length;
}

bool on_boundary(const Strip& s, Complex z) {
  return z.real() == s.lo || z.real() == s.hi;
}

bool on_boundary(const TreeRectangle& r, Complex z) {
  const double x = z.real(), y = z.imag();
  const bool x_band = x >= r.re_lo() && x <= r.re_hi();
  const bool y_band = y >= r.im_lo() && y <= r.im_hi();
  if ((x == r.re_lo() || x == r.re_hi()) && y_band) return true;
  return x_band && (y == r.im_lo() || y == r.im_hi());
}

}  // namespace

RegionMass plane_mass_detail(const PlaneMeasure& mu, const Region& region) {
  RegionMass out;
  if (mu.is_atomic()) {
    for (const auto& a : mu.atoms()) {
      if (region_contains(region, a.location)) out.mass += a.mass;
      if (std::visit([&a](const auto& r) { return on_boundary(r, a.location); },
                     region))
        ++out.boundary_atoms;
    }
    return out;
  }
  // Product measure: mass is exact on Carleson squares, infinite on
  // (nonempty) strips, undefined elsewhere.
  if (const auto* q = std::get_if<CarlesonSquare>(&region)) {
    const double r = q->center.real();
    out.mass = mu.radial().mass_below(2.0 * r) * 2.0 * r;
    return out;
  }
  if (std::holds_alternative<Strip>(region))
    throw NumericError("plane_mass: product measure has unbounded mass on strips");
  throw std::invalid_argument(
      "plane_mass: product measures support only Carleson squares and strips");
}

double plane_mass(const PlaneMeasure& mu, const Region& region) {
  return plane_mass_detail(mu, region).mass;
}

}  // namespace lcadm
