#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "esig/covariance.hpp"
#include "esig/discrete.hpp"
#include "esig/quadrature.hpp"

namespace esig {

/// Fully resolved run description. Echoed verbatim into every output document
/// so a run can be reproduced from its own output.
struct RunConfig {
  std::string subcommand = "compute";  // compute | verify | convergence | sample
  ModelSpec model;
  int dim = 1;
  double s = 0.0;
  double t = 1.0;
  int level = 4;
  int chaos = 0;
  std::vector<int> word;  // chaos > 0 target word; empty means all-ones
  QuadratureConfig quad;
  std::vector<int> grids = {8, 16, 32, 64, 128};
  long paths = 10000;
  int grid_cells = 256;                           // sample subcommand
  std::uint64_t seed = 12345;                     // sampling seed
  long long oracle_budget = kDefaultOracleBudget; // discrete-oracle ceiling
  int lattice = 5;                 // default free-time lattice points per axis
  std::vector<double> free_times;  // explicit evaluation tuple (chaos > 0)
  std::string suite = "all";       // verify subcommand
  std::vector<double> hursts;      // verify: Hurst overrides for fbm suites

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

/// Run `compute`: chaos 0 emits per-diagram terms and word values; chaos m>0
/// emits the kernel family of the requested word with values on the free-time
/// lattice.
nlohmann::json run_compute(const RunConfig& cfg);

/// Run `convergence`: discrete-oracle values against analytic values across
/// the configured grids, per diagram (and per lattice point when chaos > 0).
nlohmann::json run_convergence(const RunConfig& cfg);

/// Run `sample`: Monte Carlo estimate of the expected signature on a grid.
nlohmann::json run_sample(const RunConfig& cfg);

/// Render a per-word CSV table ("word,mean,std_error") from a sample document.
std::string sample_csv(const nlohmann::json& sample_document);

}  // namespace esig
