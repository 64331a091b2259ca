#include "shiftstab/suites.hpp"

#include <functional>

#include "shiftstab/acceptance.hpp"
#include "shiftstab/crystalline.hpp"
#include "shiftstab/error.hpp"
#include "shiftstab/interpolation.hpp"
#include "shiftstab/stability.hpp"

#ifndef SHIFTSTAB_VERSION
#define SHIFTSTAB_VERSION "dev"
#endif

namespace shiftstab {

namespace {

using nlohmann::json;

struct ExampleRow {
  std::string name;
  std::string generator;
  std::string set;
  std::string method;
  std::string verdict;
  std::string expected;
  double value = 0.0;
  std::string value_label;
};

ExampleRow stability_row(const std::string& name, const Generator& gen, const PointSet& set, Verdict expected) {
  const auto windows = centered_windows(set, {21, 41, 81});
  const auto scan = stability_r_scan(gen, set, default_r_grid(gen), windows);
  return {name,
          gen.describe(),
          set.describe(),
          std::string("gram_ladder+r_scan(") + to_string(scan.overall) + ")",
          to_string(scan.direct.verdict),
          to_string(expected),
          scan.direct.ladder.back().lambda_min,
          "lambda_min"};
}

ExampleRow integer_row(const std::string& name, const Generator& gen, Verdict expected) {
  const auto r = integer_shift_verdict(gen, 512, 16, 1e-8);
  return {name, gen.describe(), "Z", "integer_shift_verdict", to_string(r.verdict), to_string(expected), r.min_m, "min_m"};
}

ExampleRow poisson_row(const std::string& name, const PoissonComb& comb) {
  const auto r = verify_poisson(comb, TestFunction::gaussian(1.0), 30);
  return {name, r.test_id, "comb", "verify_poisson", r.residual < 1e-10 ? "verified" : "residual_high", "verified",
          r.residual, "residual"};
}

RunReport examples_suite() {
  const auto sp2 = Generator::sinc_power(2);
  std::vector<ExampleRow> rows{
      stability_row("sinc_lattice_2", Generator::sinc(), PointSet::lattice(2.0), Verdict::stable),
      stability_row("sinc_lattice_1", Generator::sinc(), PointSet::lattice(1.0), Verdict::stable),
      stability_row("sinc_lattice_1/2", Generator::sinc(), PointSet::lattice(0.5), Verdict::unstable),
      stability_row("sinc2_lattice_2/3", sp2, PointSet::lattice(2.0 / 3.0), Verdict::stable),
      stability_row("sinc2_lattice_1", sp2, PointSet::lattice(1.0), Verdict::stable),
      stability_row("sinc2_lattice_1/3", sp2, PointSet::lattice(1.0 / 3.0), Verdict::unstable),
      stability_row("sinc2_lattice_1/4", sp2, PointSet::lattice(0.25), Verdict::unstable),
      integer_row("integer_shifts_gaussian", Generator::gaussian(1.0), Verdict::stable),
      integer_row("integer_shifts_sinc_difference",
                  Generator::combination(Generator::sinc(), {{cplx(1.0), 0.0}, {cplx(-1.0), 1.0}}), Verdict::unstable),
      poisson_row("poisson_dirac_comb", dirac_comb(1.0)),
      poisson_row("poisson_alternating_comb", alternating_comb(1.0)),
  };

  RunReport rep;
  Table t{"summary", {"name", "generator", "set", "method", "verdict", "expected", "matches", "value_label", "value"}, {}};
  json out = json::array();
  int matches = 0;
  for (const auto& r : rows) {
    const bool m = r.verdict == r.expected;
    matches += m;
    t.rows.push_back({r.name, r.generator, r.set, r.method, r.verdict, r.expected, m, r.value_label, num(r.value)});
    out.push_back({{"name", r.name}, {"verdict", r.verdict}, {"expected", r.expected}, {"matches", m},
                   {r.value_label, num(r.value)}});
  }
  rep.doc["results"] = {{"rows", out}, {"matches", matches}, {"total", rows.size()}};
  rep.tables.push_back(std::move(t));
  return rep;
}

RunReport acceptance_suite() {
  RunReport rep;
  Table t{"summary", {"criterion", "pass", "summary"}, {}};
  json out = json::array();
  int passed = 0;
  for (const auto& r : run_all_criteria()) {
    passed += r.pass;
    t.rows.push_back({r.id, r.pass, r.summary});
    out.push_back({{"criterion", r.id}, {"pass", r.pass}, {"summary", r.summary}, {"info", r.info}});
  }
  rep.doc["results"] = {{"criteria", out}, {"passed", passed}, {"total", kCriterionCount}};
  rep.tables.push_back(std::move(t));
  return rep;
}

const std::vector<std::pair<std::string, std::function<RunReport()>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<RunReport()>>> s{{"examples", examples_suite},
                                                                                  {"acceptance", acceptance_suite}};
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : suites()) n.push_back(k);
    return n;
  }();
  return names;
}

RunReport run_suite(const std::string& name, const RunOptions& opts) {
  for (const auto& [k, fn] : suites()) {
    if (k != name) continue;
    RunReport rep = fn();
    json results = rep.doc["results"];
    rep.doc = {{"schema_version", kReportSchemaVersion},
               {"tool", {{"name", "shiftstab"}, {"version", SHIFTSTAB_VERSION}}},
               {"seed", opts.seed.value_or(1)},
               {"grid_scale", opts.grid_scale},
               {"operation", "run_suite"},
               {"scenario", {{"suite", name}}},
               {"verdicts", json::object()},
               {"results", results},
               {"notes", json::array()}};
    return rep;
  }
  throw Error(ErrorCode::config, "unknown suite '" + name + "' (known: examples, acceptance)");
}

}  // namespace shiftstab
