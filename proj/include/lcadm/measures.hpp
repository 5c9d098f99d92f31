#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lcadm/halfplane.hpp"

namespace lcadm {

struct RadialAtom {
  double radius;  // >= 0
  double mass;    // > 0
};

/// Power density c * r^gamma dr on [lo, hi); hi may be +inf.
struct RadialDensity {
  double gamma;  // > -1
  double coef;   // > 0
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Positive measure on [0, inf) made of point masses and power densities.
/// All interval masses have closed forms.
class RadialMeasure {
public:
  RadialMeasure() = default;
  RadialMeasure(std::vector<RadialAtom> atoms, std::vector<RadialDensity> densities);

  static RadialMeasure atom(double radius, double mass);
  static RadialMeasure power_density(double gamma, double coef);
  static RadialMeasure lebesgue(double coef = 1.0);

  double mass_below(double r) const;  // [0, r)
  double mass_upto(double r) const;   // [0, r]
  double laplace(double s) const;     // integral of e^{-s r}, s > 0

  const std::vector<RadialAtom>& atoms() const { return atoms_; }
  const std::vector<RadialDensity>& densities() const { return densities_; }
  bool empty() const { return atoms_.empty() && densities_.empty(); }

private:
  std::vector<RadialAtom> atoms_;
  std::vector<RadialDensity> densities_;
};

/// nu[0, r), guarded for r > 0 per the measure-query contract.
double radial_mass(const RadialMeasure& nu, double r);

struct Delta2Row {
  double r;
  double mass_r;   // F(r)
  double mass_2r;  // F(2r)
  double ratio;    // F(2r)/F(r), 0 when skipped
  bool skipped;    // F(r) == 0
};

struct Delta2Result {
  double sup_ratio = 0.0;
  double attained_r = 0.0;
  int skipped = 0;
  std::vector<Delta2Row> table;
};

/// Doubling-ratio scan sup F(2r)/F(r) over the grid. This is a lower bound
/// for the true supremum over r > 0; grid points with F(r) = 0 are skipped
/// and reported. Throws if every grid point has zero mass.
Delta2Result delta2_ratio(const RadialMeasure& nu, std::span<const double> grid);

std::vector<double> default_delta2_grid();  // dyadic, 2^-20 .. 2^20

struct PlaneAtom {
  Complex location;  // Re >= 0
  double mass;       // > 0
};

/// Measure on the closed right half-plane: either finitely many atoms or the
/// product (radial measure) x (Lebesgue on the imaginary axis).
class PlaneMeasure {
public:
  static PlaneMeasure atomic(std::vector<PlaneAtom> atoms);
  static PlaneMeasure product(RadialMeasure radial);

  bool is_atomic() const { return std::holds_alternative<Atomic>(rep_); }
  const std::vector<PlaneAtom>& atoms() const;
  const RadialMeasure& radial() const;

  double total_mass() const;  // atomic only

private:
  struct Atomic {
    std::vector<PlaneAtom> atoms;
  };
  struct Product {
    RadialMeasure radial;
  };
  std::variant<Atomic, Product> rep_;
};

struct RegionMass {
  double mass = 0.0;
  int boundary_atoms = 0;  // atoms sitting exactly on a region edge
};

/// Mass of a region. Atomic measures support every region family; product
/// measures only Carleson squares (exact product formula) and strips, and a
/// strip has infinite mass unless the radial part vanishes on it.
RegionMass plane_mass_detail(const PlaneMeasure& mu, const Region& region);
double plane_mass(const PlaneMeasure& mu, const Region& region);

}  // namespace lcadm
