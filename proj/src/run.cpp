#include "esig/run.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "esig/engine.hpp"
#include "esig/montecarlo.hpp"
#include "esig/version.hpp"
#include "esig/words.hpp"

namespace esig {

namespace {

// Generic interior fractions (nothing dyadic, so free times stay off cell
// boundaries for every grid used here).
constexpr double kGenericFractions[] = {0.1370830128, 0.2934802202, 0.4142135624,
                                        0.5477225575, 0.6180339887, 0.7721654321,
                                        0.8612097222, 0.9241573581};

std::string word_key(std::span<const int> word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << ',';
    os << word[i];
  }
  return os.str();
}

std::vector<int> resolve_word(const RunConfig& cfg) {
  if (!cfg.word.empty()) {
    for (int g : cfg.word)
      if (g < 1 || g > cfg.dim)
        throw std::invalid_argument("word letter outside 1..dim");
    return cfg.word;
  }
  return std::vector<int>(static_cast<std::size_t>(cfg.level), 1);
}

std::vector<std::vector<double>> free_time_tuples(const RunConfig& cfg, int m) {
  std::vector<std::vector<double>> tuples;
  if (!cfg.free_times.empty()) {
    if (static_cast<int>(cfg.free_times.size()) != m)
      throw std::invalid_argument("free times must supply exactly the chaos order");
    tuples.push_back(cfg.free_times);
    return tuples;
  }
  const int count = std::min(cfg.lattice, 8 - m + 1);
  for (int j = 0; j < count; ++j) {
    std::vector<double> tup;
    for (int i = 0; i < m; ++i)
      tup.push_back(cfg.s + (cfg.t - cfg.s) * kGenericFractions[j + i]);
    tuples.push_back(std::move(tup));
  }
  return tuples;
}

nlohmann::json document_head(const RunConfig& cfg) {
  return nlohmann::json{{"config", cfg.to_json()},
                        {"version", kVersion},
                        {"model", cfg.model.to_json()},
                        {"interval", {cfg.s, cfg.t}}};
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  return nlohmann::json{
      {"subcommand", subcommand},
      {"model", model.to_json()},
      {"dim", dim},
      {"s", s},
      {"t", t},
      {"level", level},
      {"chaos", chaos},
      {"word", word},
      {"quadrature", quad.to_json()},
      {"grids", grids},
      {"paths", paths},
      {"grid_cells", grid_cells},
      {"seed", seed},
      {"oracle_budget", oracle_budget},
      {"lattice", lattice},
      {"free_times", free_times},
      {"suite", suite},
      {"hursts", hursts},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.subcommand = j.value("subcommand", cfg.subcommand);
  if (j.contains("model")) cfg.model = ModelSpec::from_json(j.at("model"));
  cfg.dim = j.value("dim", cfg.dim);
  cfg.s = j.value("s", cfg.s);
  cfg.t = j.value("t", cfg.t);
  cfg.level = j.value("level", cfg.level);
  cfg.chaos = j.value("chaos", cfg.chaos);
  cfg.word = j.value("word", cfg.word);
  if (j.contains("quadrature")) cfg.quad = QuadratureConfig::from_json(j.at("quadrature"));
  cfg.grids = j.value("grids", cfg.grids);
  cfg.paths = j.value("paths", cfg.paths);
  cfg.grid_cells = j.value("grid_cells", cfg.grid_cells);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.oracle_budget = j.value("oracle_budget", cfg.oracle_budget);
  cfg.lattice = j.value("lattice", cfg.lattice);
  cfg.free_times = j.value("free_times", cfg.free_times);
  cfg.suite = j.value("suite", cfg.suite);
  cfg.hursts = j.value("hursts", cfg.hursts);
  return cfg;
}

nlohmann::json run_compute(const RunConfig& cfg) {
  const auto model = make_model(cfg.model);
  nlohmann::json doc = document_head(cfg);
  doc["dim"] = cfg.dim;
  doc["chaos"] = cfg.chaos;

  if (cfg.chaos == 0) {
    SignatureResult res = expected_signature(*model, cfg.dim, cfg.level, cfg.s, cfg.t, cfg.quad);
    doc["level"] = cfg.level;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& level_terms : res.terms_by_level)
      for (const auto& term : level_terms)
        terms.push_back(nlohmann::json{{"diagram", to_json(term.diagram)},
                                       {"value", term.value},
                                       {"err", term.err},
                                       {"stochastic", term.stochastic}});
    doc["terms"] = std::move(terms);
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json errors = nlohmann::json::object();
    for (int n = 1; n <= cfg.level; ++n) {
      auto level_values = res.values.level_coeffs(n);
      auto level_errors = res.errors.level_coeffs(n);
      for (std::size_t idx = 0; idx < level_values.size(); ++idx) {
        const auto w = word_from_index(idx, cfg.dim, n);
        values[word_key(w)] = level_values[idx];
        errors[word_key(w)] = level_errors[idx];
      }
    }
    doc["word_values"] = std::move(values);
    doc["word_errors"] = std::move(errors);
    return doc;
  }

  const std::vector<int> word = resolve_word(cfg);
  const int n = static_cast<int>(word.size());
  doc["level"] = n;
  doc["word"] = word_key(word);
  const auto kernels = chaos_projection_kernels(*model, word, cfg.chaos, cfg.s, cfg.t);
  const auto tuples = free_time_tuples(cfg, cfg.chaos);

  nlohmann::json terms = nlohmann::json::array();
  for (const auto& kernel : kernels) {
    nlohmann::json jk{{"diagram", to_json(kernel.diagram())},
                      {"free_positions", kernel.free_positions()},
                      {"eliminated_positions", kernel.eliminated_positions()},
                      {"integration_count", kernel.integration_count()}};
    std::vector<int> indices;
    for (int p : kernel.free_positions()) indices.push_back(word[static_cast<std::size_t>(p - 1)]);
    nlohmann::json values = nlohmann::json::array();
    for (const auto& tup : tuples) {
      ValErr r = kernel.eval(tup, indices, cfg.quad);
      values.push_back(nlohmann::json{
          {"times", tup}, {"indices", indices}, {"value", r.value}, {"err", r.err}});
    }
    jk["values"] = std::move(values);
    terms.push_back(std::move(jk));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

nlohmann::json run_convergence(const RunConfig& cfg) {
  const auto model = make_model(cfg.model);
  const std::vector<int> word = resolve_word(cfg);
  const int n = static_cast<int>(word.size());
  const int m = cfg.chaos;
  nlohmann::json doc = document_head(cfg);
  doc["level"] = n;
  doc["chaos"] = m;
  doc["grids"] = cfg.grids;

  const auto diagrams = enumerate_pairings(n, m);
  const auto tuples = free_time_tuples(cfg, m);
  if (m > 0) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& tup : tuples) pts.push_back(tup);
    doc["points"] = pts;
  }

  std::vector<IncrementGram> grams;
  grams.reserve(cfg.grids.size());
  for (int ell : cfg.grids) grams.emplace_back(*model, UniformGrid(cfg.s, cfg.t, ell));

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& diagram : diagrams) {
    nlohmann::json row{{"diagram", to_json(diagram)}};
    ChaosKernel kernel(*model, diagram, word, cfg.s, cfg.t);
    std::vector<int> indices;
    for (int p : kernel.free_positions()) indices.push_back(word[static_cast<std::size_t>(p - 1)]);

    if (m == 0) {
      const ValErr analytic = kernel.eval({}, {}, cfg.quad);
      row["analytic"] = analytic.value;
      row["analytic_err"] = analytic.err;
      nlohmann::json oracle = nlohmann::json::object();
      nlohmann::json rel = nlohmann::json::object();
      for (std::size_t gi = 0; gi < grams.size(); ++gi) {
        const double plv =
            pl_chaos_kernel(diagram, grams[gi], word, {}, {}, cfg.oracle_budget);
        const std::string key = std::to_string(cfg.grids[gi]);
        oracle[key] = plv;
        rel[key] = std::abs(plv - analytic.value) / std::max(1e-300, std::abs(analytic.value));
      }
      row["oracle"] = std::move(oracle);
      row["rel_error"] = std::move(rel);
    } else {
      nlohmann::json per_point = nlohmann::json::array();
      for (const auto& tup : tuples) {
        const ValErr analytic = kernel.eval(tup, indices, cfg.quad);
        nlohmann::json pj{{"times", tup}, {"analytic", analytic.value},
                          {"analytic_err", analytic.err}};
        nlohmann::json oracle = nlohmann::json::object();
        nlohmann::json rel = nlohmann::json::object();
        for (std::size_t gi = 0; gi < grams.size(); ++gi) {
          const double plv =
              pl_chaos_kernel(diagram, grams[gi], word, tup, indices, cfg.oracle_budget);
          const std::string key = std::to_string(cfg.grids[gi]);
          oracle[key] = plv;
          rel[key] =
              std::abs(plv - analytic.value) / std::max(1e-300, std::abs(analytic.value));
        }
        pj["oracle"] = std::move(oracle);
        pj["rel_error"] = std::move(rel);
        per_point.push_back(std::move(pj));
      }
      row["points"] = std::move(per_point);
    }
    rows.push_back(std::move(row));
  }
  doc["diagrams"] = std::move(rows);
  return doc;
}

nlohmann::json run_sample(const RunConfig& cfg) {
  const auto model = make_model(cfg.model);
  const UniformGrid grid(cfg.s, cfg.t, cfg.grid_cells);
  const McEstimate est =
      estimate_expected_signature(*model, grid, cfg.dim, cfg.level, cfg.paths, cfg.seed);

  nlohmann::json doc = document_head(cfg);
  doc["dim"] = cfg.dim;
  doc["level"] = cfg.level;
  doc["grid_cells"] = cfg.grid_cells;
  doc["paths"] = est.n_paths;
  doc["seed"] = est.seed;
  nlohmann::json mean = nlohmann::json::object();
  nlohmann::json se = nlohmann::json::object();
  for (int n = 1; n <= cfg.level; ++n) {
    auto mv = est.mean.level_coeffs(n);
    auto sv = est.std_error.level_coeffs(n);
    for (std::size_t idx = 0; idx < mv.size(); ++idx) {
      const auto w = word_from_index(idx, cfg.dim, n);
      mean[word_key(w)] = mv[idx];
      se[word_key(w)] = sv[idx];
    }
  }
  doc["mean"] = std::move(mean);
  doc["std_error"] = std::move(se);
  return doc;
}

std::string sample_csv(const nlohmann::json& doc) {
  std::ostringstream os;
  os << "word,mean,std_error\n";
  const auto& mean = doc.at("mean");
  const auto& se = doc.at("std_error");
  for (auto it = mean.begin(); it != mean.end(); ++it) {
    os << '"' << it.key() << "\"," << it.value().get<double>() << ','
       << se.at(it.key()).get<double>() << '\n';
  }
  return os.str();
}

}  // namespace esig
