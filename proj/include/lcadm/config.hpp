#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcadm/embedding.hpp"
#include "lcadm/systems.hpp"

namespace lcadm {

using Json = nlohmann::ordered_json;

/// Configuration problems (bad schema, unknown fields, violated
/// preconditions detectable before any numerics run). Mapped to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct AnalysisConfig {
  // problem
  std::optional<DiagonalSystem> system;
  PlaneMeasure measure = PlaneMeasure::atomic({});  // system-derived or raw
  Weight weight = Weight::power(0.0);
  double p = 2.0;
  double q = 2.0;
  std::vector<std::string> operations;

  // grids (resolved: defaults already filled in)
  double theta = 0.0;
  int dyadic_lo = 0, dyadic_hi = 0;
  std::vector<double> lengths, partition, rates;
  std::vector<Complex> centers;
  std::vector<double> p_grid, alpha_grid;
  double base_length = 1.0;
  int k_lo = -5, k_hi = 5;
  double rho_constant = 1.0;

  std::optional<ApSpaceSpec> space;

  double tol = 1e-10;
  VerdictThresholds verdict_thresholds;
  int max_cells = 10000;

  std::string report_name = "report.json";
  std::string csv_name = "sweep.csv";
  std::string boundary_name = "boundary.json";

  // Canonical echo with every default resolved; parsing it again yields the
  // same configuration.
  Json echo;
};

AnalysisConfig parse_config(const Json& j);
AnalysisConfig load_config_file(const std::string& path);

const std::vector<std::string>& known_operations();

}  // namespace lcadm
