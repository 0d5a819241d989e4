// Runs the ten acceptance criteria; one PASS/FAIL line each.
#include <cstdlib>
#include <iostream>

#include "entropy_banach/checks.hpp"

int main(int argc, char** argv) {
  eb::CheckOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  int failed = 0;
  eb::run_acceptance(opts, [&](const eb::CriterionResult& r) {
    std::cout << eb::format_result_line(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
