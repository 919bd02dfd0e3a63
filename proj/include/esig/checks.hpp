#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace esig {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst deviation (or elapsed seconds for runtime checks)
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double elapsed_seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Options honoured by suites that scan Hurst parameters.
struct VerifyOptions {
  std::vector<double> hursts;  // empty selects each suite's default set
};

std::vector<std::string> available_suites();

/// Run one named suite; throws std::invalid_argument listing the available
/// suites when the name is unknown.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options = {});

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options = {});

}  // namespace esig
