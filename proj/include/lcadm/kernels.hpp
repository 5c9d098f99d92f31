#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lcadm/systems.hpp"

namespace lcadm {

/// Reproducing kernel in closed form. Built-ins:
///   "hardy"        k_z(w) = 1 / (2 pi (w + conj z))
///   "bergman:a"    k_z(w) = 2^a (a+1) / pi * (w + conj z)^-(2+a),  a > -1
/// The overall normalization is conventional; every test below is a ratio or
/// a trend, so only consistency matters.
struct KernelSpec {
  std::string name;
  std::function<Complex(Complex, Complex)> eval;  // (z, w) -> k_z(w)

  static KernelSpec hardy();
  static KernelSpec bergman(double alpha);
  static KernelSpec parse(std::string_view spec);  // "hardy" | "bergman:<a>"
};

struct DoubleSumResult {
  double value = 0.0;      // sum_{k,l <= N} |b_k b_l Re k(..)|^2
  double slope = 0.0;      // log2 fit of the dyadic partial sums (top half)
  std::vector<std::pair<int, double>> partial;  // (n, partial sum) at dyadic n
};

/// Summability test of the squared kernel couplings; a flat trend certifies
/// the sufficient condition.
DoubleSumResult double_sum_condition(const DiagonalSystem& sys,
                                     const KernelSpec& kernel, int truncation);

struct SubsetCheckResult {
  double sup_ratio = 0.0;
  std::vector<size_t> attained;  // subset attaining the sup
  struct Row {
    std::vector<size_t> subset;  // 1-based mode indices
    double double_sum = 0.0;
    double mass = 0.0;  // sum |b|^2 over the subset
    double ratio = 0.0;
  };
  std::vector<Row> rows;
};

/// Ratio (double sum over the subset) / (sum |b|^2): a diverging sup across
/// subsets certifies non-admissibility.
SubsetCheckResult necessary_subset_check(
    const DiagonalSystem& sys, const KernelSpec& kernel,
    std::span<const std::vector<size_t>> subsets);

/// Dyadic blocks [2^j, 2^(j+1)) and their prefix unions, up to the truncation.
std::vector<std::vector<size_t>> default_subsets(size_t truncation);

struct BanachAlgebraResult {
  bool sufficient = false;
  double coefficient_sum = 0.0;  // sum |b_k|^2 over the truncation
  std::string warning;
};

/// Under the caller-asserted hypotheses (pointwise-multiplication algebra,
/// kernel norms bounded by `kernel_norm_bound` <= 1), square-summable
/// coefficients suffice for admissibility. Tail rules that are visibly not
/// square-summable produce false-with-warning.
BanachAlgebraResult banach_algebra_sufficient(const DiagonalSystem& sys,
                                              double kernel_norm_bound);

struct OperatorNormResult {
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;
  double last_delta = 0.0;
};

/// Finite-section norm of f -> sum_l |b_l|^2 Re k_{-lambda_l}(.) f(-lambda_l)
/// on the mass-weighted sequence space, by power iteration. Growth of the
/// norm across truncations is the admissibility diagnostic.
OperatorNormResult prop_operator_norm(const DiagonalSystem& sys,
                                      const KernelSpec& kernel, int truncation,
                                      double tol = 1e-8,
                                      int max_iterations = 10000);

}  // namespace lcadm
