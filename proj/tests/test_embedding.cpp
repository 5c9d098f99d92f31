#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lcadm/embedding.hpp"
#include "lcadm/random.hpp"
#include "lcadm/systems.hpp"

using namespace lcadm;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

PlaneMeasure single_atom(Complex z, double mass) {
  return PlaneMeasure::atomic({{z, mass}});
}
}  // namespace

TEST_CASE("criterion exponent") {
  CHECK(criterion_exponent(2.0, 2.0, 0.0) == Approx(1.0));
  // same quantity written two ways
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const double p = rng.uniform(1.05, 4.0);
    const double q = rng.uniform(1.0, 4.0);
    const double alpha = rng.uniform(-2.0, p - 1.0 - 0.05);
    const double via_conj = criterion_exponent(p, q, alpha);
    const double direct = q * (1.0 - 1.0 / p) * (1.0 - alpha / (p - 1.0));
    CHECK(via_conj == Approx(direct).margin(1e-14));
  }
  // decreasing in alpha, and the q = p = 2 specialization
  double prev = criterion_exponent(2.0, 2.0, -1.0);
  for (double alpha : {-0.5, 0.0, 0.5, 0.9}) {
    const double b = criterion_exponent(2.0, 2.0, alpha);
    CHECK(b < prev);
    CHECK(b == Approx(1.0 - alpha));
    prev = b;
  }
}

TEST_CASE("necessary interval condition") {
  auto heat = system_measure(builtin_system("heat-neumann", 100));
  EmbeddingProblem prob(2.0, 2.0, Weight::power(0.0), heat);
  const double L = kPi * kPi;
  auto result = necessary_interval_check(prob, std::vector<double>{L});
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].lhs == Approx(1.0));
  CHECK(result.rows[0].rhs == Approx(2.0 * kPi * kPi).epsilon(1e-12));
  CHECK(result.rows[0].ratio == Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-12));

  EmbeddingProblem empty(2.0, 2.0, Weight::power(0.0), PlaneMeasure::atomic({}));
  auto none = necessary_interval_check(empty, std::vector<double>{1.0, 2.0});
  CHECK(none.sup_ratio == 0.0);

  EmbeddingProblem one(2.0, 2.0, Weight::power(0.0), single_atom({1.0, 0.0}, 1.0));
  auto r1 = necessary_interval_check(one, std::vector<double>{1.0});
  CHECK(r1.sup_ratio == Approx(0.5).epsilon(1e-12));

  // alpha >= p-1 makes the dual integral diverge
  EmbeddingProblem bad(2.0, 2.0, Weight::power(1.0), single_atom({1.0, 0.0}, 1.0));
  auto rd = necessary_interval_check(bad, std::vector<double>{1.0});
  CHECK(rd.rows[0].skipped);

  // off-axis atoms are rejected
  EmbeddingProblem off(2.0, 2.0, Weight::power(0.0), single_atom({1.0, 1.0}, 1.0));
  CHECK_THROWS_AS(necessary_interval_check(off, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("sufficient strip condition") {
  EmbeddingProblem one(2.0, 2.0, Weight::power(0.0), single_atom({1.0, 0.0}, 1.0));
  auto r = sufficient_strip_check(one, std::vector<double>{0.5, 2.0});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].c == Approx(1.0).epsilon(1e-12));  // 1 * (int e^{-t})^1
  CHECK(r.sum == Approx(1.0).epsilon(1e-12));
  CHECK(r.norm_bound == Approx(1.0).epsilon(1e-12));
  CHECK(r.uncovered_mass == 0.0);

  EmbeddingProblem empty(2.0, 2.0, Weight::power(0.0), PlaneMeasure::atomic({}));
  CHECK(sufficient_strip_check(empty, std::vector<double>{0.5, 2.0}).sum == 0.0);

  // Heat modes across dyadic strips 2^3..2^7: by direct enumeration the three
  // atoms land in strips with rates 8, 32, 64, giving 1/16 + 1/64 + 1/128.
  auto heat3 = system_measure(builtin_system("heat-neumann", 3));
  EmbeddingProblem prob(2.0, 2.0, Weight::power(0.0), heat3);
  std::vector<double> part{8.0, 16.0, 32.0, 64.0, 128.0};
  auto rh = sufficient_strip_check(prob, part);
  CHECK(rh.sum == Approx(11.0 / 128.0).epsilon(1e-12));
  CHECK(rh.norm_bound == Approx(std::sqrt(11.0 / 128.0)).epsilon(1e-12));
  CHECK(rh.uncovered_mass == 0.0);

  // Mass outside the covered strips is reported.
  EmbeddingProblem low(2.0, 2.0, Weight::power(0.0), single_atom({0.25, 0.0}, 1.0));
  CHECK(sufficient_strip_check(low, std::vector<double>{0.5, 2.0}).uncovered_mass ==
        Approx(1.0));
}

TEST_CASE("sectorial dyadic criterion on the heat system") {
  auto mu = system_measure(builtin_system("heat-neumann", 10000));
  EmbeddingProblem prob(2.0, 2.0, Weight::power(0.0), mu);
  auto [lo, hi] = default_dyadic_range(mu);
  auto r = sectorial_criterion(prob, kPi / 4.0, lo, hi);
  CHECK(r.beta == Approx(1.0));
  CHECK(r.sup_ratio == Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(r.attained_length == Approx(kPi * kPi));
  CHECK(r.attained_level == 4);
  CHECK(r.slope <= 0.01);
}

TEST_CASE("sectorial dyadic criterion on the geometric system") {
  auto mu = system_measure(builtin_system("parabolic-2n", 60));
  EmbeddingProblem at_minus1(2.0, 2.0, Weight::power(-1.0), mu);
  auto [lo, hi] = default_dyadic_range(mu);
  auto r = sectorial_criterion(at_minus1, 0.5, lo, hi);
  CHECK(r.beta == Approx(2.0));
  CHECK(r.sup_ratio == Approx(1.0).epsilon(1e-12));
  CHECK(r.attained_length == Approx(2.0));
  CHECK(r.slope <= 0.0);

  EmbeddingProblem at_half(2.0, 2.0, Weight::power(-0.5), mu);
  auto rh = sectorial_criterion(at_half, 0.5, lo, hi);
  CHECK(rh.beta == Approx(1.5));
  CHECK(rh.slope >= 0.4);
  CHECK(rh.slope <= 0.5);
}

TEST_CASE("sectorial criterion preconditions") {
  auto mu = single_atom({1.0, 0.0}, 1.0);
  EmbeddingProblem q_less(2.0, 1.5, Weight::power(0.0), mu);
  CHECK_THROWS_AS(sectorial_criterion(q_less, 0.5, 0, 4), std::invalid_argument);
  EmbeddingProblem big_alpha(2.0, 2.0, Weight::power(1.5), mu);
  CHECK_THROWS_AS(sectorial_criterion(big_alpha, 0.5, 0, 4), std::invalid_argument);
  EmbeddingProblem outside(2.0, 2.0, Weight::power(0.0), single_atom({1.0, 3.0}, 1.0));
  CHECK_THROWS_AS(sectorial_criterion(outside, 0.2, 0, 4), std::invalid_argument);
}

TEST_CASE("lower bounds from the exponential test family") {
  EmbeddingProblem one(2.0, 2.0, Weight::power(0.0), single_atom({1.0, 0.0}, 1.0));
  auto r = embedding_lower_bound(one, 0.5, std::vector<double>{1.0});
  CHECK(r.value == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  EmbeddingProblem empty(2.0, 2.0, Weight::power(0.0), PlaneMeasure::atomic({}));
  CHECK(embedding_lower_bound(empty, 0.5, std::vector<double>{1.0}).value == 0.0);

  // Heat system at rate pi^2 against a series oracle.
  const int n_modes = 100;
  auto heat = system_measure(builtin_system("heat-neumann", n_modes));
  EmbeddingProblem prob(2.0, 2.0, Weight::power(0.0), heat);
  const double a = kPi * kPi;
  auto rh = embedding_lower_bound(prob, kPi / 4.0, std::vector<double>{a});
  double series = 0.0;
  for (int n = 1; n <= n_modes; ++n)
    series += std::pow(1.0 / (a + n * n * kPi * kPi), 2.0);
  const double oracle = std::sqrt(series) / std::sqrt(1.0 / (2.0 * a));
  CHECK(rh.value == Approx(oracle).epsilon(1e-12));
}

TEST_CASE("square condition for weighted spaces") {
  ApSpaceSpec hardy(2.0, {RadialMeasure::atom(0.0, 1.0 / (2.0 * kPi))});
  auto mu = single_atom({1.0, 0.0}, 1.0);
  std::vector<Complex> centers{{1.0, 0.0}};
  auto r = square_necessary_check(hardy, 2.0, mu, centers);
  CHECK(r.sup_ratio == Approx(kPi).epsilon(1e-12));

  auto re = square_necessary_check(hardy, 2.0, PlaneMeasure::atomic({}), centers);
  CHECK(re.sup_ratio == 0.0);

  ApSpaceSpec dirichlet(2.0, {RadialMeasure::atom(0.0, 1.0 / (2.0 * kPi)),
                              RadialMeasure::lebesgue(1.0 / kPi)});
  auto rd = square_necessary_check(dirichlet, 2.0, mu, centers);
  CHECK(rd.sup_ratio == Approx(kPi / 5.0).epsilon(1e-12));

  // The space side can vanish on small squares; those centers are skipped.
  ApSpaceSpec far(2.0, {RadialMeasure::atom(10.0, 1.0)});
  auto rs = square_necessary_check(far, 2.0, mu, centers);
  CHECK(rs.skipped == 1);
  CHECK(rs.rows[0].skipped);
}

TEST_CASE("square overlap test against a grid oracle") {
  auto mu = single_atom({1.0, 0.0}, 1.0);
  std::vector<Complex> centers{{2.0, 0.0}};
  auto r = tree_sufficient_check(mu, 2.0, 2.0, BesovWeight::constant(), centers,
                                 1e-8);
  REQUIRE_FALSE(r.rows[0].skipped);
  // Hand value: int_{1/2}^{2} 2/x dx + int_2^4 4/x^2 dx = 2 ln 4 + 1.
  const double closed = 2.0 * std::log(4.0) + 1.0;
  CHECK(r.rows[0].lhs == Approx(closed).epsilon(1e-7));
  CHECK(r.sup_ratio == Approx(closed).epsilon(1e-7));

  // Riemann-grid oracle over Q(2).
  const int n = 1500;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * 4.0 / n;
    for (int j = 0; j < n; ++j) {
      const double y = -2.0 + (j + 0.5) * 4.0 / n;
      if (x > 0.5 && std::abs(y) <= x) acc += 1.0 / (x * x);
    }
  }
  acc *= 16.0 / (static_cast<double>(n) * n);
  CHECK(r.rows[0].lhs == Approx(acc).epsilon(0.01));

  auto skipped = tree_sufficient_check(PlaneMeasure::atomic({}), 2.0, 2.0,
                                       BesovWeight::constant(), centers, 1e-6);
  CHECK(skipped.rows[0].skipped);
}

TEST_CASE("square overlap ratio is scale invariant") {
  Rng rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<PlaneAtom> atoms;
    for (int i = 0; i < 3; ++i)
      atoms.push_back({Complex(rng.uniform(0.2, 1.8), rng.uniform(-1.0, 1.0)),
                       rng.log_uniform(0.5, 2.0)});
    const double s = rng.log_uniform(0.5, 4.0);
    std::vector<PlaneAtom> scaled;
    for (const auto& a : atoms) scaled.push_back({s * a.location, a.mass});

    std::vector<Complex> c1{{2.0, 0.0}};
    std::vector<Complex> c2{{2.0 * s, 0.0}};
    auto r1 = tree_sufficient_check(PlaneMeasure::atomic(atoms), 2.0, 2.0,
                                    BesovWeight::constant(), c1, 1e-7);
    auto r2 = tree_sufficient_check(PlaneMeasure::atomic(scaled), 2.0, 2.0,
                                    BesovWeight::constant(), c2, 1e-7);
    REQUIRE_FALSE(r1.rows[0].skipped);
    REQUIRE_FALSE(r2.rows[0].skipped);
    CHECK(r1.rows[0].ratio == Approx(r2.rows[0].ratio).epsilon(1e-5));
  }
}

TEST_CASE("derivative energy of transforms") {
  // F(z) = 1/(z+1): integral of |z+1|^{-4} over the half-plane is pi/4
  // (shift to Re u > 1, integrate pi/(2 x^3) over x > 1).
  std::vector<std::pair<double, ExpPowerFunction>> terms{{1.0, {0.0, 1.0}}};
  auto e = besov_energy(terms, 2.0, BesovWeight::constant(), 1e-7);
  CHECK(e.converged);
  CHECK(e.value == Approx(kPi / 4.0).epsilon(1e-6));

  // Polar Riemann oracle for the same integral.
  const int nr = 4000, nphi = 400;
  double oracle = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r0 = std::pow(10.0, -3.0 + 7.0 * i / nr);
    const double r1 = std::pow(10.0, -3.0 + 7.0 * (i + 1.0) / nr);
    const double rm = 0.5 * (r0 + r1);
    for (int j = 0; j < nphi; ++j) {
      const double phi = -kPi / 2.0 + kPi * (j + 0.5) / nphi;
      const Complex z = std::polar(rm, phi);
      oracle += std::pow(std::abs(z + 1.0), -4.0) * rm * (r1 - r0) * (kPi / nphi);
    }
  }
  CHECK(e.value == Approx(oracle).epsilon(1e-3));

  CHECK(besov_energy({}, 2.0, BesovWeight::constant(), 1e-6).value == 0.0);
}

TEST_CASE("derivative energy is conformally scale invariant") {
  std::vector<std::pair<double, ExpPowerFunction>> terms{
      {1.0, {0.0, 1.0}}, {-0.5, {1.0, 2.0}}};
  auto base = besov_energy(terms, 2.0, BesovWeight::constant(), 1e-8);
  const double s = 2.7;
  // F(s z) corresponds to coefficients c s^{-(beta+1)} and rates a/s.
  std::vector<std::pair<double, ExpPowerFunction>> dilated;
  for (const auto& [c, f] : terms)
    dilated.push_back({c * std::pow(s, -(f.beta + 1.0)),
                       ExpPowerFunction{f.beta, f.rate / s}});
  auto scaled = besov_energy(dilated, 2.0, BesovWeight::constant(), 1e-8);
  REQUIRE(base.converged);
  REQUIRE(scaled.converged);
  CHECK(scaled.value == Approx(base.value).epsilon(1e-6));
}

TEST_CASE("square-mass test for the derivative-weighted space") {
  ApSpaceSpec hardy(2.0, {RadialMeasure::atom(0.0, 1.0 / (2.0 * kPi))});
  auto mu = single_atom({1.0, 0.0}, 1.0);

  auto empty = a2m_sectorial_check(hardy, PlaneMeasure::atomic({}), 0.5, 1.0, 0, 3);
  CHECK(empty.sup_ratio == 0.0);

  auto rh = a2m_sectorial_check(hardy, mu, 0.5, 1.0, 1, 1);
  CHECK(rh.sup_ratio == Approx(2.0 * kPi).epsilon(1e-12));

  ApSpaceSpec dirichlet(2.0, {RadialMeasure::atom(0.0, 1.0 / (2.0 * kPi)),
                              RadialMeasure::lebesgue(1.0 / kPi)});
  auto rd = a2m_sectorial_check(dirichlet, mu, 0.5, 1.0, 1, 1);
  // nu_0(Q) = 2/pi, nu_1(Q) = 16/pi, denominator (2^k |I|)^2 = 4:
  // rhs = [sqrt(pi/2) + (6/pi)^{-1/2}]^{-2}.
  const double rhs =
      std::pow(std::sqrt(kPi / 2.0) + std::sqrt(kPi / 6.0), -2.0);
  CHECK(rd.sup_ratio == Approx(1.0 / rhs).epsilon(1e-12));

  ApSpaceSpec p3(3.0, {RadialMeasure::atom(0.0, 1.0)});
  CHECK_THROWS_AS(a2m_sectorial_check(p3, mu, 0.5, 1.0, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("lower bounds never exceed the strip upper bound") {
  Rng rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<PlaneAtom> atoms;
    const int n = rng.integer(2, 10);
    for (int i = 0; i < n; ++i) {
      const double re = rng.log_uniform(0.5, 64.0);
      const double im = re * rng.uniform(-1.0, 1.0);  // inside S(pi/4)
      atoms.push_back({Complex(re, im), rng.log_uniform(0.1, 10.0)});
    }
    auto mu = PlaneMeasure::atomic(atoms);
    const double p = rng.uniform(1.2, 2.0);
    const double q = p + rng.uniform(0.0, 1.0);
    const double alpha = rng.uniform(-1.0, p - 1.0 - 0.1);
    EmbeddingProblem prob(p, q, Weight::power(alpha), mu);

    std::vector<double> partition, rates;
    for (int j = -4; j <= 10; ++j) partition.push_back(std::ldexp(1.0, j));
    for (int j = -6; j <= 12; ++j) rates.push_back(std::ldexp(1.0, j));
    auto upper = sufficient_strip_check(prob, partition);
    auto lower = embedding_lower_bound(prob, 1.0, rates);
    REQUIRE(upper.all_finite);
    CHECK(upper.uncovered_mass == 0.0);
    CHECK(lower.value <= upper.norm_bound + 1e-9);
  }
}

TEST_CASE("threshold sup is monotone in alpha for measures beyond 1") {
  Rng rng(53);
  std::vector<PlaneAtom> atoms;
  for (int i = 0; i < 12; ++i)
    atoms.push_back({Complex(rng.log_uniform(1.0, 256.0), 0.0),
                     rng.log_uniform(0.1, 10.0)});
  auto mu = PlaneMeasure::atomic(atoms);
  double prev = 0.0;
  bool first = true;
  for (double alpha : {-1.0, -0.5, 0.0, 0.5, 0.9}) {
    EmbeddingProblem prob(2.0, 2.0, Weight::power(alpha), mu);
    auto [lo, hi] = default_dyadic_range(mu);
    auto r = sectorial_criterion(prob, 0.5, lo, hi);
    if (!first) CHECK(r.sup_ratio >= prev - 1e-12);
    prev = r.sup_ratio;
    first = false;
  }
}

TEST_CASE("necessary check stays finite whenever the strip sum is finite") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<PlaneAtom> atoms;
    const int n = rng.integer(1, 8);
    for (int i = 0; i < n; ++i)
      atoms.push_back({Complex(rng.log_uniform(0.2, 30.0), 0.0),
                       rng.log_uniform(0.1, 4.0)});
    auto mu = PlaneMeasure::atomic(atoms);
    const double p = rng.uniform(1.3, 2.5);
    const double alpha = rng.uniform(-1.0, p - 1.0 - 0.2);
    EmbeddingProblem prob(p, p, Weight::power(alpha), mu);
    std::vector<double> partition, lengths;
    for (int j = -4; j <= 8; ++j) partition.push_back(std::ldexp(1.0, j));
    for (int j = -3; j <= 6; ++j) lengths.push_back(std::ldexp(1.0, j));
    auto strip = sufficient_strip_check(prob, partition);
    auto necessary = necessary_interval_check(prob, lengths);
    REQUIRE(strip.all_finite);
    CHECK(std::isfinite(strip.sum));
    CHECK(necessary.skipped == 0);
    CHECK(std::isfinite(necessary.sup_ratio));
  }
}
