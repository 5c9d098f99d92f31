#include "lcadm/halfplane.hpp"

#include <cmath>

namespace lcadm {

CarlesonSquare::CarlesonSquare(Complex a) : center(a) {
  if (!(a.real() > 0.0))
    throw std::invalid_argument("CarlesonSquare: center needs Re > 0");
}

bool CarlesonSquare::contains(Complex z) const {
  return z.real() >= 0.0 && z.real() < 2.0 * center.real() &&
         std::abs(z.imag() - center.imag()) <= center.real();
}

double CarlesonSquare::area() const {
  const double r = center.real();
  return 4.0 * r * r;
}

Sector::Sector(double t) : theta(t) {
  if (!(t >= 0.0) || !(t < 1.5707963267948966))
    throw std::invalid_argument("Sector: theta must lie in [0, pi/2)");
}

bool Sector::contains(Complex z) const {
  if (!(z.real() > 0.0)) return false;
  if (theta == 0.0) return z.imag() == 0.0;
  return std::abs(std::arg(z)) < theta;
}

SectorTruncation::SectorTruncation(double t, double len)
    : theta(t), length(len) {
  Sector check(t);  // validates theta
  (void)check;
  if (!(len > 0.0))
    throw std::invalid_argument("SectorTruncation: length must be positive");
}

bool SectorTruncation::contains(Complex z) const {
  return Sector(theta).contains(z) && z.real() <= length;
}

Strip::Strip(double a, double b) : lo(a), hi(b) {
  if (!(a > 0.0) || !(b >= a))
    throw std::invalid_argument("Strip: need 0 < a <= b");
}

bool Strip::contains(Complex z) const {
  return z.real() > lo && z.real() <= hi;
}

TreeRectangle::TreeRectangle(Complex zeta, int k_, int l_)
    : anchor(zeta), k(k_), l(l_) {
  if (!(zeta.real() > 0.0))
    throw std::invalid_argument("TreeRectangle: anchor needs Re > 0");
}

double TreeRectangle::re_lo() const {
  return std::ldexp(anchor.real(), k - 1);
}
double TreeRectangle::re_hi() const { return std::ldexp(anchor.real(), k); }
double TreeRectangle::im_lo() const {
  return anchor.imag() + std::ldexp(1.0, k) * l * anchor.real();
}
double TreeRectangle::im_hi() const {
  return anchor.imag() + std::ldexp(1.0, k) * (l + 1) * anchor.real();
}

bool TreeRectangle::contains(Complex z) const {
  if (!(z.real() > 0.0)) return false;
  const double rx = z.real() / anchor.real();
  const double pow2k = std::ldexp(1.0, k);
  if (!(rx > 0.5 * pow2k && rx <= pow2k)) return false;
  const double ry = (z.imag() - anchor.imag()) / anchor.real();
  return ry >= pow2k * l && ry < pow2k * (l + 1);
}

bool region_contains(const Region& region, Complex z) {
  return std::visit([z](const auto& r) { return r.contains(z); }, region);
}

std::vector<TreeRectangle> tree_cover(Complex anchor, int k_lo, int k_hi,
                                      int l_lo, int l_hi) {
  if (!(anchor.real() > 0.0))
    throw std::invalid_argument("tree_cover: anchor needs Re > 0");
  std::vector<TreeRectangle> out;
  for (int k = k_lo; k <= k_hi; ++k)
    for (int l = l_lo; l <= l_hi; ++l) out.emplace_back(anchor, k, l);
  return out;
}

}  // namespace lcadm
