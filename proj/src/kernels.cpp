#include "lcadm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcadm {

namespace {
constexpr double kPi = std::numbers::pi;

double fit_slope(const std::vector<std::pair<double, double>>& pts) {
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

void require_hilbert_state(const DiagonalSystem& sys, const char* who) {
  if (sys.state_exponent != 2.0)
    throw std::invalid_argument(std::string(who) + ": requires q = 2");
}

}  // namespace

KernelSpec KernelSpec::hardy() {
  return {"hardy", [](Complex z, Complex w) {
            return 1.0 / (2.0 * kPi * (w + std::conj(z)));
          }};
}

KernelSpec KernelSpec::bergman(double alpha) {
  if (!(alpha > -1.0))
    throw std::invalid_argument("KernelSpec::bergman: alpha > -1 required");
  const double c = std::pow(2.0, alpha) * (alpha + 1.0) / kPi;
  return {"bergman:" + std::to_string(alpha), [c, alpha](Complex z, Complex w) {
            return c * std::pow(w + std::conj(z), -(2.0 + alpha));
          }};
}

KernelSpec KernelSpec::parse(std::string_view spec) {
  if (spec == "hardy") return hardy();
  constexpr std::string_view prefix = "bergman:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string arg(spec.substr(prefix.size()));
    size_t used = 0;
    const double alpha = std::stod(arg, &used);
    if (used != arg.size())
      throw std::invalid_argument("KernelSpec: bad bergman parameter \"" + arg + "\"");
    return bergman(alpha);
  }
  throw std::invalid_argument("KernelSpec: unknown kernel \"" + std::string(spec) + "\"");
}

DoubleSumResult double_sum_condition(const DiagonalSystem& sys,
                                     const KernelSpec& kernel, int truncation) {
  require_hilbert_state(sys, "double_sum_condition");
  const int n = std::min<int>(truncation, static_cast<int>(sys.size()));
  if (n < 1) throw std::invalid_argument("double_sum_condition: empty truncation");

  DoubleSumResult out;
  double acc = 0.0;
  int next_record = 1;
  for (int m = 0; m < n; ++m) {
    const Complex zm = -sys.eigenvalues[m];
    const double bm = std::abs(sys.coefficients[m]);
    // New row and column of the symmetric array.
    for (int k = 0; k < m; ++k) {
      const double bk = std::abs(sys.coefficients[k]);
      const double re = kernel.eval(-sys.eigenvalues[k], zm).real();
      const double term = bk * bm * re;
      if (!std::isfinite(term))
        throw NumericError("double_sum_condition: kernel evaluation failed");
      acc += 2.0 * term * term;
    }
    const double diag = bm * bm * kernel.eval(zm, zm).real();
    acc += diag * diag;
    if (m + 1 == next_record || m + 1 == n) {
      out.partial.emplace_back(m + 1, acc);
      next_record *= 2;
    }
  }
  out.value = acc;

  std::vector<std::pair<double, double>> logpts;
  for (const auto& [m, s] : out.partial)
    if (s > 0.0) logpts.emplace_back(std::log2(static_cast<double>(m)), std::log2(s));
  if (logpts.size() >= 2)
    out.slope = fit_slope({logpts.begin() + logpts.size() / 2, logpts.end()});
  return out;
}

SubsetCheckResult necessary_subset_check(
    const DiagonalSystem& sys, const KernelSpec& kernel,
    std::span<const std::vector<size_t>> subsets) {
  require_hilbert_state(sys, "necessary_subset_check");
  SubsetCheckResult out;
  for (const auto& subset : subsets) {
    if (subset.empty())
      throw std::invalid_argument("necessary_subset_check: empty subset");
    SubsetCheckResult::Row row;
    row.subset = subset;
    for (size_t idx : subset) {
      if (idx < 1 || idx > sys.size())
        throw std::invalid_argument("necessary_subset_check: index out of range");
      const double b = std::abs(sys.coefficients[idx - 1]);
      row.mass += b * b;
    }
    if (!(row.mass > 0.0))
      throw std::invalid_argument(
          "necessary_subset_check: subset with vanishing coefficients");
    for (size_t i : subset)
      for (size_t j : subset) {
        const double bi = std::abs(sys.coefficients[i - 1]);
        const double bj = std::abs(sys.coefficients[j - 1]);
        const double re =
            kernel.eval(-sys.eigenvalues[i - 1], -sys.eigenvalues[j - 1]).real();
        const double term = bi * bj * re;
        row.double_sum += term * term;
      }
    row.ratio = row.double_sum / row.mass;
    if (row.ratio > out.sup_ratio) {
      out.sup_ratio = row.ratio;
      out.attained = subset;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<size_t>> default_subsets(size_t truncation) {
  std::vector<std::vector<size_t>> out;
  for (size_t lo = 1; lo <= truncation; lo *= 2) {
    std::vector<size_t> block, prefix;
    for (size_t k = 1; k <= std::min(2 * lo - 1, truncation); ++k) {
      prefix.push_back(k);
      if (k >= lo) block.push_back(k);
    }
    out.push_back(std::move(block));
    out.push_back(std::move(prefix));
  }
  return out;
}

BanachAlgebraResult banach_algebra_sufficient(const DiagonalSystem& sys,
                                              double kernel_norm_bound) {
  if (!(kernel_norm_bound > 0.0) || kernel_norm_bound > 1.0)
    throw std::invalid_argument(
        "banach_algebra_sufficient: asserted kernel norm bound must lie in (0, 1]");
  require_hilbert_state(sys, "banach_algebra_sufficient");
  BanachAlgebraResult out;
  for (const auto& b : sys.coefficients) out.coefficient_sum += std::norm(b);
  switch (sys.tail) {
    case TailRule::none:
      out.sufficient = std::isfinite(out.coefficient_sum);
      break;
    case TailRule::quadratic:
      out.sufficient = false;
      out.warning = "declared tail has constant coefficients: not square-summable";
      break;
    case TailRule::geometric:
      out.sufficient = false;
      out.warning = "declared tail grows geometrically: not square-summable";
      break;
  }
  return out;
}

OperatorNormResult prop_operator_norm(const DiagonalSystem& sys,
                                      const KernelSpec& kernel, int truncation,
                                      double tol, int max_iterations) {
  require_hilbert_state(sys, "prop_operator_norm");
  const int n = std::min<int>(truncation, static_cast<int>(sys.size()));
  if (n < 1) throw std::invalid_argument("prop_operator_norm: empty truncation");

  // On the mass-weighted space the operator is similar to the symmetric
  // matrix S = D^(1/2) K D^(1/2) with D = diag |b|^2 and
  // K_ij = Re k_{-lambda_j}(-lambda_i).
  std::vector<double> s(static_cast<size_t>(n) * n);
  std::vector<double> root(n);
  for (int i = 0; i < n; ++i) root[i] = std::abs(sys.coefficients[i]);
  bool all_zero = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re =
          kernel.eval(-sys.eigenvalues[j], -sys.eigenvalues[i]).real();
      if (!std::isfinite(re))
        throw NumericError("prop_operator_norm: kernel evaluation failed");
      s[static_cast<size_t>(i) * n + j] = root[i] * re * root[j];
      if (s[static_cast<size_t>(i) * n + j] != 0.0) all_zero = false;
    }
  OperatorNormResult out;
  if (all_zero) {
    out.converged = true;
    return out;
  }

  std::vector<double> v(n), w(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * (i + 1);
  double nv = 0.0;
  for (double x : v) nv += x * x;
  nv = std::sqrt(nv);
  for (double& x : v) x /= nv;

  double estimate = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = &s[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) acc += row[j] * v[j];
      w[i] = acc;
    }
    double nw = 0.0;
    for (double x : w) nw += x * x;
    nw = std::sqrt(nw);
    out.iterations = it;
    out.last_delta = std::abs(nw - estimate);
    if (nw == 0.0) {
      out.norm = 0.0;
      out.converged = true;
      return out;
    }
    if (it > 1 && out.last_delta <= tol * std::max(nw, 1e-300)) {
      out.norm = nw;
      out.converged = true;
      return out;
    }
    estimate = nw;
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  out.norm = estimate;
  out.converged = false;
  return out;
}

}  // namespace lcadm
