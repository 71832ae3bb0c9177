#pragma once

#include <string>
#include <vector>

namespace vmcast {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidateOptions {
  std::string fixture_dir = "data";
  double mc_tolerance_se = 3.0;  // Monte Carlo acceptance band in standard errors
  int mc_trials = 200000;
};

/// The self-check suite behind the `validate` subcommand: feedback-table
/// fixture match, decode-probability Monte Carlo cross-check, Marcum Q
/// reference values, and the association hand-trace.
std::vector<CheckResult> run_validation(const ValidateOptions& opts);

}  // namespace vmcast
