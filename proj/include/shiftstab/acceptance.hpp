#pragma once

#include <string>
#include <vector>

namespace shiftstab {

inline constexpr int kCriterionCount = 10;

struct CriterionResult {
  int id = 0;
  bool pass = false;
  /// One-line measured values and tolerances.
  std::string summary;
  double seconds = 0.0;
  /// Extra diagnostic lines that do not affect pass/fail.
  std::vector<std::string> info;
};

/// Runs acceptance criterion `id` (1..10). Throws invalid_argument for other ids.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all_criteria();

/// "criterion N: PASS|FAIL (x.xx s) summary"
std::string format_line(const CriterionResult& r);

}  // namespace shiftstab
