// esig: expected signatures and Wiener-chaos kernels of Gaussian processes.
//
// Subcommands build a run configuration, hand it to the shared library
// through the C API, and write the returned JSON document to stdout or a
// file. Any failure is reported as machine-readable error JSON with a
// nonzero exit code.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esig.h"

namespace {

using nlohmann::json;

struct CommonArgs {
  std::string model = "bm";
  double hurst = 0.5;
  double horizon = 1.0;
  double sigma = 1.0;
  double theta = 1.0;
  double bridge_eps = 0.0;
  double s = 0.0;
  double t = 1.0;
  int dim = 1;
  int level = 4;
  int chaos = 0;
  std::string word;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  int mc_samples = 0;
  int max_depth = 0;
  double grading = 0.0;
  std::string reduction;
  std::uint64_t seed = 12345;
  std::string grids = "8,16,32,64,128";
  long paths = 10000;
  int grid_cells = 256;
  long long budget = 0;
  std::string times;
  std::string out;
  std::string csv;
  std::string suite = "all";
};

void add_model_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--model", a.model, "Model kind: fbm|bm|bridge|ou")->capture_default_str();
  cmd->add_option("--hurst", a.hurst, "Hurst parameter (fbm), in (1/4,1)");
  cmd->add_option("--horizon", a.horizon, "Process horizon T")->capture_default_str();
  cmd->add_option("--sigma", a.sigma, "OU volatility");
  cmd->add_option("--theta", a.theta, "OU mean-reversion rate");
  cmd->add_option("--bridge-eps", a.bridge_eps, "Bridge evaluation margin (default 1e-3 T)");
}

void add_interval_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--s", a.s, "Interval start")->capture_default_str();
  cmd->add_option("--t", a.t, "Interval end")->capture_default_str();
}

void add_quad_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--rel-tol", a.rel_tol, "Quadrature relative tolerance");
  cmd->add_option("--abs-tol", a.abs_tol, "Quadrature absolute tolerance");
  cmd->add_option("--max-depth", a.max_depth, "Adaptive bisection depth limit");
  cmd->add_option("--grading", a.grading, "Mesh grading exponent (0 = 1/(2H))");
  cmd->add_option("--mc-samples", a.mc_samples, "Quasi-Monte Carlo fallback samples");
  cmd->add_option("--reduction", a.reduction,
                  "Antiderivative folding before quadrature: none|tail|full");
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

json build_config(const std::string& subcommand, const CommonArgs& a, bool hurst_given) {
  json model{{"kind", a.model}, {"horizon", a.horizon}};
  if (a.model == "fbm") model["hurst"] = a.hurst;
  if (a.model == "ou") {
    model["sigma"] = a.sigma;
    model["theta"] = a.theta;
  }
  if (a.model == "bridge" && a.bridge_eps > 0.0) model["bridge_eps"] = a.bridge_eps;

  json quad = json::object();
  if (a.rel_tol > 0.0) quad["rel_tol"] = a.rel_tol;
  if (a.abs_tol > 0.0) quad["abs_tol"] = a.abs_tol;
  if (a.max_depth > 0) quad["max_depth"] = a.max_depth;
  if (a.grading > 0.0) quad["grading_exponent"] = a.grading;
  if (a.mc_samples > 0) quad["mc_fallback_samples"] = a.mc_samples;
  if (!a.reduction.empty()) quad["reduction"] = a.reduction;
  quad["rng_seed"] = a.seed;

  json cfg{{"subcommand", subcommand}, {"model", model},   {"dim", a.dim},
           {"s", a.s},                 {"t", a.t},         {"level", a.level},
           {"chaos", a.chaos},         {"quadrature", quad}, {"seed", a.seed},
           {"paths", a.paths},         {"grid_cells", a.grid_cells}};
  if (!a.word.empty()) cfg["word"] = parse_int_list(a.word);
  cfg["grids"] = parse_int_list(a.grids);
  if (a.budget > 0) cfg["oracle_budget"] = a.budget;
  if (!a.times.empty()) cfg["free_times"] = parse_double_list(a.times);
  cfg["suite"] = a.suite;
  if (subcommand == "verify" && hurst_given) cfg["hursts"] = std::vector<double>{a.hurst};
  return cfg;
}

int emit_error(esig_status status) {
  json err{{"error", {{"status", static_cast<int>(status)}, {"message", esig_last_error()}}}};
  std::cout << err.dump(2) << std::endl;
  return 1;
}

int write_output(const std::string& doc, const CommonArgs& a) {
  if (a.out.empty()) {
    std::cout << doc << std::endl;
  } else {
    std::ofstream file(a.out);
    if (!file) {
      std::cerr << "cannot open " << a.out << std::endl;
      return 1;
    }
    file << doc << std::endl;
  }
  return 0;
}

// Per-word CSV table of a sample document, for external plotting.
int write_csv(const json& doc, const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    std::cerr << "cannot open " << path << std::endl;
    return 1;
  }
  file << "word,mean,std_error\n";
  const auto& mean = doc.at("mean");
  const auto& se = doc.at("std_error");
  for (auto it = mean.begin(); it != mean.end(); ++it)
    file << '"' << it.key() << "\"," << it.value().get<double>() << ','
         << se.at(it.key()).get<double>() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expected signatures and Wiener-chaos kernels of Gaussian processes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(esig_version()));

  CommonArgs a;

  CLI::App* compute = app.add_subcommand(
      "compute", "Expected signature (chaos 0) or chaos-kernel family (chaos m > 0)");
  add_model_flags(compute, a);
  add_interval_flags(compute, a);
  add_quad_flags(compute, a);
  compute->add_option("--dim", a.dim, "Ambient dimension d (1..4)")->capture_default_str();
  compute->add_option("--level", a.level, "Truncation level N (0..6)")->capture_default_str();
  compute->add_option("--chaos", a.chaos, "Chaos order m")->capture_default_str();
  compute->add_option("--word", a.word, "Target word for chaos > 0, e.g. 1,2,1");
  compute->add_option("--times", a.times, "Free times tuple, e.g. 0.2,0.7");
  compute->add_option("--seed", a.seed, "Seed for stochastic fallbacks");
  compute->add_option("--out", a.out, "Write the JSON document to this file");

  CLI::App* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("--suite", a.suite, "Suite name or 'all'")->capture_default_str();
  CLI::Option* verify_hurst = verify->add_option("--hurst", a.hurst, "Override the Hurst set");
  verify->add_option("--out", a.out, "Write the JSON report to this file");

  CLI::App* convergence = app.add_subcommand(
      "convergence", "Discrete-oracle vs analytic values across grids");
  add_model_flags(convergence, a);
  add_interval_flags(convergence, a);
  add_quad_flags(convergence, a);
  convergence->add_option("--level", a.level, "Word length n")->capture_default_str();
  convergence->add_option("--chaos", a.chaos, "Chaos order m")->capture_default_str();
  convergence->add_option("--grids", a.grids, "Grid sizes, e.g. 8,16,32,64,128")
      ->capture_default_str();
  convergence->add_option("--budget", a.budget, "Oracle assignment budget");
  convergence->add_option("--out", a.out, "Write the JSON document to this file");

  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo estimate on a grid");
  add_model_flags(sample, a);
  add_interval_flags(sample, a);
  sample->add_option("--dim", a.dim, "Ambient dimension d")->capture_default_str();
  sample->add_option("--level", a.level, "Truncation level N")->capture_default_str();
  sample->add_option("--grid", a.grid_cells, "Grid cells")->capture_default_str();
  sample->add_option("--paths", a.paths, "Number of sample paths")->capture_default_str();
  sample->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  sample->add_option("--out", a.out, "Write the JSON document to this file");
  sample->add_option("--csv", a.csv, "Also write a per-word CSV table to this file");

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  const json cfg = build_config(sub, a, verify_hurst->count() > 0);

  char* out_json = nullptr;
  const esig_status status = esig_run(cfg.dump().c_str(), &out_json);
  if (status != ESIG_OK) return emit_error(status);
  const std::string doc(out_json);
  esig_free_string(out_json);

  int rc = write_output(doc, a);
  if (rc == 0 && sub == "sample" && !a.csv.empty()) rc = write_csv(json::parse(doc), a.csv);
  if (rc == 0 && sub == "verify" && !json::parse(doc).value("passed", false)) rc = 2;
  return rc;
}
