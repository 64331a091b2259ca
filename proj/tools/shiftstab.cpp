// shiftstab: run a scenario file or a preset suite and write its report.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "shiftstab/dispatch.hpp"
#include "shiftstab/error.hpp"
#include "shiftstab/report.hpp"
#include "shiftstab/scenario.hpp"
#include "shiftstab/suites.hpp"

namespace {

int exit_code(shiftstab::ErrorCode c) {
  using shiftstab::ErrorCode;
  switch (c) {
    case ErrorCode::config:
    case ErrorCode::invalid_argument: return 2;
    case ErrorCode::resource_limit: return 3;
    case ErrorCode::unsupported_generator:
    case ErrorCode::unsupported_request:
    case ErrorCode::unsupported_set: return 4;
  }
  return 1;
}

void print_written(const shiftstab::WrittenFiles& f) {
  std::cout << "report: " << f.report.string() << "\n";
  for (const auto& t : f.tables) std::cout << "table:  " << t.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of shifts of a generator over point sets: scenarios, suites and reports"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int threads = 0;
  double grid_scale = 1.0;
  app.add_option("--seed", seed, "Override the scenario seed");
  app.add_option("--out", out_dir, "Output directory (overrides [output].dir)");
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--grid-scale", grid_scale, "Multiply grid densities by this factor")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run one scenario file");
  std::string scenario_path;
  run->add_option("scenario", scenario_path, "Scenario TOML file")->required();

  auto* suite = app.add_subcommand("suite", "Run a preset suite (examples, acceptance)");
  std::string suite_name;
  suite->add_option("name", suite_name, "Suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 reports usage errors as code 106 etc.; usage problems are config errors here.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (threads > 0) omp_set_num_threads(threads);
  const shiftstab::RunOptions opts{seed, grid_scale};

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (*run) {
      auto sc = shiftstab::load_scenario(scenario_path);
      if (out_dir) sc.output.dir = *out_dir;
      auto rep = shiftstab::run_operation(sc, opts);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      print_written(shiftstab::write_report(std::move(rep), sc.output, wall));
    } else {
      auto rep = shiftstab::run_suite(suite_name, opts);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      shiftstab::OutputSpec spec;
      spec.dir = out_dir.value_or(".");
      spec.name = "suite_" + suite_name;
      for (const auto& t : rep.tables) {
        for (const auto& row : t.rows) {
          for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "  " : "") << shiftstab::csv_cell(row[i]);
          std::cout << "\n";
        }
      }
      print_written(shiftstab::write_report(std::move(rep), spec, wall));
    }
    return 0;
  } catch (const shiftstab::Error& e) {
    std::cerr << "error (" << shiftstab::to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
