#pragma once

#include <variant>
#include <vector>

#include "lcadm/common.hpp"

namespace lcadm {

// Region families on the right half-plane. Edge conventions are part of the
// contract (atomic measures are edge-sensitive):
//   square   : 0 <= Re z < 2 Re a,  |Im z - Im a| <= Re a
//   sector   : Re z > 0, |arg z| < theta  (theta = 0 degenerates to the
//              open positive real axis)
//   truncation: sector and Re z <= length
//   strip    : a < Re z <= b

struct CarlesonSquare {
  Complex center;  // Re > 0
  explicit CarlesonSquare(Complex a);
  bool contains(Complex z) const;
  double area() const;  // 4 (Re a)^2
};

struct Sector {
  double theta;  // in [0, pi/2)
  explicit Sector(double t);
  bool contains(Complex z) const;
};

struct SectorTruncation {
  double theta;
  double length;  // > 0
  SectorTruncation(double t, double len);
  bool contains(Complex z) const;
};

struct Strip {
  double lo;  // > 0
  double hi;  // >= lo
  Strip(double a, double b);
  bool contains(Complex z) const;
};

// Rectangle R_(k,l) of the dyadic decomposition anchored at zeta:
//   2^(k-1) < Re z / Re zeta <= 2^k,
//   2^k l <= (Im z - Im zeta) / Re zeta < 2^k (l+1).
// Over all (k,l) in Z^2 the rectangles tile the open half-plane.
struct TreeRectangle {
  Complex anchor;  // Re > 0
  int k = 0;
  int l = 0;
  TreeRectangle(Complex zeta, int k_, int l_);
  bool contains(Complex z) const;
  // Closed-form bounds, mostly for tests and reporting.
  double re_lo() const;  // exclusive
  double re_hi() const;  // inclusive
  double im_lo() const;  // inclusive
  double im_hi() const;  // exclusive
};

using Region = std::variant<CarlesonSquare, Sector, SectorTruncation, Strip,
                            TreeRectangle>;

bool region_contains(const Region& region, Complex z);

std::vector<TreeRectangle> tree_cover(Complex anchor, int k_lo, int k_hi,
                                      int l_lo, int l_hi);

}  // namespace lcadm
