#include "lcadm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace lcadm::quad {

namespace {

// QUADPACK dqk15 abscissae/weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  double a, b;
  T value;
  double err;
};

template <typename T, typename F>
Panel<T> gk15(F&& f, double a, double b, bool& nonfinite) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T kronrod{};
  T gauss{};
  for (int i = 0; i < 8; ++i) {
    if (i == 7) {
      T fc = f(c);
      if (!std::isfinite(std::abs(fc))) nonfinite = true;
      kronrod += kWgk[7] * fc;
      gauss += kWg[3] * fc;
      break;
    }
    T lo = f(c - h * kXgk[i]);
    T hi = f(c + h * kXgk[i]);
    if (!std::isfinite(std::abs(lo)) || !std::isfinite(std::abs(hi)))
      nonfinite = true;
    kronrod += kWgk[i] * (lo + hi);
    if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
  }
  Panel<T> p;
  p.a = a;
  p.b = b;
  p.value = h * kronrod;
  double diff = std::abs(h * (kronrod - gauss));
  // QUADPACK-style sharpened estimate.
  double scale = std::abs(p.value) + 1e-300;
  p.err = std::min(diff, scale * std::pow(200.0 * diff / scale, 1.5));
  if (!std::isfinite(p.err)) p.err = diff;
  return p;
}

template <typename T>
struct AdaptiveResult {
  T value;
  double error;
  bool converged;
  int panels;
};

template <typename T, typename F>
AdaptiveResult<T> adaptive(F&& f, const std::vector<std::pair<double, double>>& seeds,
                           const Options& opt) {
  bool nonfinite = false;
  auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.err < y.err; };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);

  T total{};
  double err = 0.0;
  int count = 0;
  for (auto [a, b] : seeds) {
    if (!(b > a)) continue;
    Panel<T> p = gk15<T>(f, a, b, nonfinite);
    total += p.value;
    err += p.err;
    heap.push(p);
    ++count;
  }
  auto good = [&] {
    return err <= opt.tol * std::max(std::abs(total), 1e-300);
  };
  while (!good() && count < opt.max_panels && !heap.empty() && !nonfinite) {
    Panel<T> worst = heap.top();
    heap.pop();
    total -= worst.value;
    err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at rounding limit
      total += worst.value;
      err += worst.err;
      break;
    }
    Panel<T> left = gk15<T>(f, worst.a, mid, nonfinite);
    Panel<T> right = gk15<T>(f, mid, worst.b, nonfinite);
    total += left.value + right.value;
    err += left.err + right.err;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  err = std::max(err, 0.0);
  return {total, err, good() && !nonfinite, count};
}

}  // namespace

Outcome integrate(const std::function<double(double)>& f, double a, double b,
                  const Options& opt) {
  auto r = adaptive<double>(f, {{a, b}}, opt);
  return {r.value, r.error, r.converged, r.panels};
}

ComplexOutcome integrate_complex(const std::function<Complex(double)>& f,
                                 double a, double b, const Options& opt) {
  auto r = adaptive<Complex>(f, {{a, b}}, opt);
  return {r.value, r.error, r.converged, r.panels};
}

Outcome integrate_panels(const std::function<double(double)>& f,
                         const std::vector<std::pair<double, double>>& panels,
                         const Options& opt) {
  auto r = adaptive<double>(f, panels, opt);
  return {r.value, r.error, r.converged, r.panels};
}

}  // namespace lcadm::quad
