#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "shiftstab/crystalline.hpp"
#include "shiftstab/generators.hpp"
#include "shiftstab/point_sets.hpp"

namespace shiftstab {

struct OutputSpec {
  std::filesystem::path dir = ".";
  std::string name = "report";
  bool csv = true;
};

/// A validated scenario file.
struct Scenario {
  std::string source;
  std::optional<Generator> generator;
  std::optional<PointSet> set;
  std::optional<PoissonComb> comb;
  std::string operation;
  /// Operation parameters, already checked against the operation's key list.
  nlohmann::json params = nlohmann::json::object();
  OutputSpec output;
  std::uint64_t seed = 1;
  /// Normalized copy of the input for the report.
  nlohmann::json echo;
};

/// All operation ids the dispatcher knows.
const std::vector<std::string>& operation_ids();

/// Parses TOML text. Errors carry ErrorCode::config and a "source:line:column: " prefix.
Scenario parse_scenario(const std::string& text, const std::string& source_name);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace shiftstab
