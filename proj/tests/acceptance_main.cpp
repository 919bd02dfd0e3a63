// Acceptance runner: executes every verification suite and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "esig/checks.hpp"

int main() {
  const std::vector<std::pair<int, std::string>> criteria = {
      {1, "bm-closed-form"},     {2, "level2-universal"}, {3, "appendix-level4"},
      {4, "h-half-degeneracy"},  {5, "self-similarity"},  {6, "one-pair"},
      {7, "oracle-convergence"}, {8, "shuffle-expectation"}, {9, "montecarlo"},
      {10, "properties"},
  };

  bool all_passed = true;
  for (const auto& [number, suite] : criteria) {
    esig::SuiteResult res;
    try {
      res = esig::run_suite(suite);
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %2d (%s): exception: %s\n", number, suite.c_str(), e.what());
      all_passed = false;
      continue;
    }
    int failed = 0;
    for (const auto& c : res.checks)
      if (!c.passed) ++failed;
    std::printf("[%s] criterion %2d (%s): %zu checks, %d failed, %.1f s\n",
                res.passed() ? "PASS" : "FAIL", number, suite.c_str(), res.checks.size(), failed,
                res.elapsed_seconds);
    for (const auto& c : res.checks) {
      if (c.passed) continue;
      std::printf("       failed: %s (measured %.6g, tolerance %.6g) %s\n", c.name.c_str(),
                  c.measured, c.tolerance, c.detail.c_str());
    }
    all_passed = all_passed && res.passed();
  }
  std::printf("%s\n", all_passed ? "ACCEPTANCE: all criteria passed"
                                 : "ACCEPTANCE: some criteria FAILED");
  return all_passed ? 0 : 1;
}
