#pragma once

#include <cstdint>
#include <optional>

#include "shiftstab/report.hpp"
#include "shiftstab/scenario.hpp"

namespace shiftstab {

struct RunOptions {
  /// Overrides the scenario seed.
  std::optional<std::uint64_t> seed;
  /// Multiplies grid densities (probe counts, grid points) and divides grid steps.
  double grid_scale = 1.0;
};

/// Runs the scenario's operation and builds its report (nothing is written).
RunReport run_operation(const Scenario& sc, const RunOptions& opts);

}  // namespace shiftstab
