// Reproduction criteria as a test binary. With no arguments every criterion
// runs; numeric arguments select a subset. One PASS/FAIL line per criterion,
// followed by the individual checks. All comparisons are exact integer or
// rational equalities; there is no floating tolerance anywhere.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "paradox/repro.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int id = 1; id <= paradox::ReproSuite::kCriteria; ++id) ids.push_back(id);
  }

  paradox::ReproOptions options;
  options.threads = 4;
  options.null_window_hi = 10'000'000;
  options.cst_hi = 1'150'000;
  options.record_prefix_hi = 1'000'000;
  options.linear_form_samples = 100'000;
  paradox::ReproSuite suite(options);

  int failed = 0;
  for (int id : ids) {
    const paradox::CriterionResult r = suite.run(id);
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
              << "  (" << std::fixed << std::setprecision(1) << r.seconds << " s)\n";
    for (const std::string& line : r.details) std::cout << "    " << line << '\n';
    std::cout.flush();
    if (!r.passed) ++failed;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
