#pragma once

#include <string>
#include <vector>

#include "dosc/params.hpp"

namespace dosc {

struct Check {
  std::string name;
  double defect = 0.0;
  double tol = 0.0;
  bool pass = false;

  bool operator==(const Check&) const = default;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double wall_time_s = 0.0;

  bool passed() const;
  bool operator==(const SuiteReport&) const = default;
};

struct SuiteOptions {
  MeixnerParams meixner{2.0, 0.4};
  CharlierParams charlier{1.0};
  KravchukParams kravchuk{0.5, 16};
  /// Kernel parameter for the reproduction and composition checks, |t| < 1.
  double t = 0.5;
  int n_max = 10;
  double tail_tol = 1e-14;
  /// Multiplies every tolerance.
  double tol_scale = 1.0;
};

const std::vector<std::string>& suite_names();

/// orthogonality, algebra, coherent, kernels, limits or all. Throws
/// ParameterError for an unknown suite or invalid options.
SuiteReport run_suite(const std::string& suite, const SuiteOptions& options = {});

/// {"suite", "checks": [{"name", "defect", "tol", "pass"}], "wall_time_s"}
std::string report_json(const SuiteReport& report);
SuiteReport parse_report(const std::string& json);

}  // namespace dosc
