#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lcadm/halfplane.hpp"
#include "lcadm/random.hpp"

using namespace lcadm;
using Catch::Approx;

TEST_CASE("carleson square membership and area") {
  CarlesonSquare q(Complex(1.0, 0.0));
  CHECK(q.contains(Complex(1.0, 0.5)));
  CHECK_FALSE(q.contains(Complex(2.0, 0.0)));  // Re edge is open
  CHECK(q.contains(Complex(0.5, 1.0)));        // Im band is closed
  CHECK(q.contains(Complex(0.0, 0.0)));        // left edge is closed
  CHECK(q.area() == 4.0);
  CHECK_THROWS_AS(CarlesonSquare(Complex(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("sector, truncation and strip membership") {
  Sector s(std::numbers::pi / 4.0);
  CHECK(s.contains(Complex(1.0, 0.99)));
  CHECK_FALSE(s.contains(Complex(1.0, 1.0)));  // boundary ray excluded
  CHECK_FALSE(s.contains(Complex(0.0, 0.0)));

  Sector axis(0.0);
  CHECK(axis.contains(Complex(2.0, 0.0)));
  CHECK_FALSE(axis.contains(Complex(2.0, 1e-12)));

  Strip strip(1.0, 2.0);
  CHECK_FALSE(strip.contains(Complex(1.0, 5.0)));  // left edge open
  CHECK(strip.contains(Complex(2.0, 5.0)));        // right edge closed
  CHECK_THROWS_AS(Strip(2.0, 1.0), std::invalid_argument);

  SectorTruncation tr(std::numbers::pi / 4.0, 2.0);
  CHECK(tr.contains(Complex(2.0, 0.0)));  // right edge closed
  CHECK_FALSE(tr.contains(Complex(2.0000001, 0.0)));
}

TEST_CASE("tree rectangles by direct substitution") {
  TreeRectangle r(Complex(1.0, 0.0), 0, 0);
  CHECK(r.re_lo() == 0.5);
  CHECK(r.re_hi() == 1.0);
  CHECK(r.im_lo() == 0.0);
  CHECK(r.im_hi() == 1.0);
  CHECK(r.contains(Complex(0.75, 0.5)));
  CHECK(r.contains(Complex(1.0, 0.0)));        // Re edge closed on the right
  CHECK_FALSE(r.contains(Complex(0.5, 0.5)));  // and open on the left
  CHECK_FALSE(r.contains(Complex(0.75, 1.0)));

  auto two = tree_cover(Complex(1.0, 0.0), 0, 1, 0, 0);
  REQUIRE(two.size() == 2);
  // Disjoint Re bands.
  CHECK(two[0].re_hi() <= two[1].re_lo() + 1e-15);
}

TEST_CASE("shifted anchor rectangle matches a sampled oracle") {
  // Direct substitution: Re in (1/2, 1], Im in [0, 1).
  TreeRectangle r(Complex(2.0, 1.0), -1, -1);
  CHECK(r.re_lo() == Approx(0.5));
  CHECK(r.re_hi() == Approx(1.0));
  CHECK(r.im_lo() == Approx(0.0));
  CHECK(r.im_hi() == Approx(1.0));
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Complex z(rng.uniform(0.01, 2.0), rng.uniform(-1.0, 2.0));
    const bool expect = z.real() > 0.5 && z.real() <= 1.0 && z.imag() >= 0.0 &&
                        z.imag() < 1.0;
    CHECK(r.contains(z) == expect);
  }
}

TEST_CASE("rectangles tile the half-plane band") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Complex anchor(rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0));
    const int k_lo = -3, k_hi = 3;
    for (int i = 0; i < 200; ++i) {
      const double re = anchor.real() * rng.uniform(std::ldexp(1.0, k_lo - 1),
                                                    std::ldexp(1.0, k_hi));
      const double im = rng.uniform(-40.0, 40.0);
      if (re <= anchor.real() * std::ldexp(1.0, k_lo - 1)) continue;
      Complex z(re, im);
      int hits = 0;
      for (int k = k_lo; k <= k_hi; ++k) {
        // Only rectangles near l* = floor(ry / 2^k) can contain z; the rest
        // exclude it by their Im range.
        const double ry = (z.imag() - anchor.imag()) / anchor.real();
        const int l_star = static_cast<int>(std::floor(ry / std::ldexp(1.0, k)));
        for (int l = l_star - 1; l <= l_star + 1; ++l)
          if (TreeRectangle(anchor, k, l).contains(z)) ++hits;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("square nesting and scaling") {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    Complex a(rng.uniform(0.1, 4.0), rng.uniform(-3.0, 3.0));
    CarlesonSquare q(a);
    Complex z(rng.uniform(0.0, 2.5 * a.real()), rng.uniform(-5.0, 5.0));
    if (q.contains(z)) {
      // Moving Im z toward the center keeps membership.
      const double dy = (z.imag() - a.imag()) * rng.uniform();
      CHECK(q.contains(Complex(z.real(), a.imag() + dy)));
    }
    const double s = rng.log_uniform(0.25, 4.0);
    CHECK(q.contains(z) == CarlesonSquare(s * a).contains(s * z));

    const double theta = rng.uniform(0.05, 1.5);
    CHECK(Sector(theta).contains(z) == Sector(theta).contains(s * z));
  }
}
