#pragma once

#include <string>
#include <vector>

#include "shiftstab/dispatch.hpp"
#include "shiftstab/report.hpp"

namespace shiftstab {

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs a preset suite and builds its summary report. Mathematical verdicts and failed
/// acceptance rows are reported, not thrown; unknown names are a config error.
RunReport run_suite(const std::string& name, const RunOptions& opts);

}  // namespace shiftstab
