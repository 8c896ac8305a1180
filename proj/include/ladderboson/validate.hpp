#pragma once

#include <limits>
#include <string>
#include <vector>

namespace ladder {

struct CriterionResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed value
  double threshold = 0.0;  // limit it was compared against
  std::string detail;
  double seconds = 0.0;
};

/// Names of the acceptance suites, in execution order.
std::vector<std::string> acceptance_suite_names();

/// Runs the selected acceptance suites (all when `suites` is empty).  A
/// non-NaN `tolerance_override` replaces each suite's threshold; used to
/// exercise the failure path.
std::vector<CriterionResult> run_acceptance(
    const std::vector<std::string>& suites = {},
    double tolerance_override = std::numeric_limits<double>::quiet_NaN());

}  // namespace ladder
