#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "shiftstab/scenario.hpp"

namespace shiftstab {

inline constexpr const char* kReportSchemaVersion = "1.0";

/// One CSV table of a report; cells are JSON scalars.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct RunReport {
  nlohmann::json doc = nlohmann::json::object();
  std::vector<Table> tables;
};

/// Finite doubles as numbers; inf/nan as the strings "inf", "-inf", "nan".
nlohmann::json num(double v);
nlohmann::json num(cplx v);

/// Shortest round-trip formatting, so CSV cells are bit-stable.
std::string csv_cell(const nlohmann::json& v);
std::string to_csv(const Table& t);

/// Writes to a sibling temp file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct WrittenFiles {
  std::filesystem::path report;
  std::vector<std::filesystem::path> tables;
  std::filesystem::path timing;
};

/// <dir>/<name>.json, <dir>/<name>.<table>.csv (when csv is on) and the
/// <dir>/<name>.timing.json sidecar holding the wall time.
WrittenFiles write_report(RunReport report, const OutputSpec& out, double wall_seconds);

/// Structural check against the subset of JSON Schema used by docs/report_schema.json:
/// type, required, properties, additionalProperties, items, enum, const. Returns the
/// list of violations (empty when valid).
std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace shiftstab
