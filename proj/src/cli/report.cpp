#include "shiftstab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "shiftstab/error.hpp"

namespace shiftstab {

nlohmann::json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json num(cplx v) { return nlohmann::json::array({num(v.real()), num(v.imag())}); }

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::config, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::config, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::config, "cannot move report into place: " + ec.message());
  }
}

WrittenFiles write_report(RunReport report, const OutputSpec& out, double wall_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(out.dir, ec);
  if (ec) throw Error(ErrorCode::config, "cannot create output directory " + out.dir.string());

  WrittenFiles files;
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : report.tables) {
    nlohmann::json meta{{"name", t.name}, {"columns", t.columns}, {"rows", t.rows.size()}};
    if (out.csv) {
      const std::string file = out.name + "." + t.name + ".csv";
      write_atomic(out.dir / file, to_csv(t));
      files.tables.push_back(out.dir / file);
      meta["file"] = file;
    } else {
      meta["file"] = nullptr;
      meta["data"] = t.rows;
    }
    tables.push_back(std::move(meta));
  }
  report.doc["tables"] = std::move(tables);
  report.doc["timing_file"] = out.name + ".timing.json";

  files.report = out.dir / (out.name + ".json");
  write_atomic(files.report, report.doc.dump(2) + "\n");
  files.timing = out.dir / (out.name + ".timing.json");
  const nlohmann::json timing{{"report", out.name + ".json"}, {"wall_time_seconds", wall_seconds}};
  write_atomic(files.timing, timing.dump(2) + "\n");
  return files;
}

namespace {

bool type_matches(const nlohmann::json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") return v.is_number_integer();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

void check(const nlohmann::json& v, const nlohmann::json& s, const std::string& path, std::vector<std::string>& errs) {
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_matches(v, t.get<std::string>());
    } else {
      ok = type_matches(v, s["type"].get<std::string>());
    }
    if (!ok) {
      errs.push_back(path + ": expected type " + s["type"].dump());
      return;
    }
  }
  if (s.contains("const") && v != s["const"]) errs.push_back(path + ": expected " + s["const"].dump());
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || v == e;
    if (!found) errs.push_back(path + ": value " + v.dump() + " not in enum");
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& r : s["required"]) {
        if (!v.contains(r.get<std::string>())) errs.push_back(path + ": missing required '" + r.get<std::string>() + "'");
      }
    }
    const bool closed = s.contains("additionalProperties") && s["additionalProperties"].is_boolean() &&
                        !s["additionalProperties"].get<bool>();
    for (const auto& [k, sub] : v.items()) {
      if (s.contains("properties") && s["properties"].contains(k)) {
        check(sub, s["properties"][k], path + "." + k, errs);
      } else if (s.contains("additionalProperties") && s["additionalProperties"].is_object()) {
        check(sub, s["additionalProperties"], path + "." + k, errs);
      } else if (closed) {
        errs.push_back(path + ": unexpected key '" + k + "'");
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], path + "[" + std::to_string(i) + "]", errs);
  }
}

}  // namespace

std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema) {
  std::vector<std::string> errs;
  check(doc, schema, "$", errs);
  return errs;
}

}  // namespace shiftstab
