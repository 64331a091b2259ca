// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero if any
// selected criterion fails.

#include <exception>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "shiftstab/acceptance.hpp"
#include "shiftstab/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> ids;
  bool quiet = false;
  int threads = 0;
  app.add_option("--criterion,-c", ids, "Run only these criteria")->check(CLI::Range(1, shiftstab::kCriterionCount));
  app.add_flag("--quiet,-q", quiet, "Omit diagnostic info lines");
  app.add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);
  shiftstab::kernels::set_threads(threads);

  try {
    std::vector<shiftstab::CriterionResult> results;
    if (ids.empty()) {
      results = shiftstab::run_all_criteria();
    } else {
      for (int id : ids) results.push_back(shiftstab::run_criterion(id));
    }
    int failed = 0;
    for (const auto& r : results) {
      std::cout << shiftstab::format_line(r) << '\n';
      if (!quiet)
        for (const auto& line : r.info) std::cout << "    info: " << line << '\n';
      failed += r.pass ? 0 : 1;
    }
    std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
    return failed ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
