#include "esig.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "esig/checks.hpp"
#include "esig/covariance.hpp"
#include "esig/diagrams.hpp"
#include "esig/engine.hpp"
#include "esig/errors.hpp"
#include "esig/run.hpp"
#include "esig/version.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
esig_status guarded(Fn&& fn) {
  try {
    fn();
    return ESIG_OK;
  } catch (const esig::QuadratureError& e) {
    g_last_error = std::string(e.what()) + " (estimate " + std::to_string(e.estimate) +
                   ", bound " + std::to_string(e.error_bound) + ")";
    return ESIG_ERR_QUADRATURE;
  } catch (const esig::CapabilityError& e) {
    g_last_error = e.what();
    return ESIG_ERR_CAPABILITY;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ESIG_ERR_BAD_JSON;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return ESIG_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return ESIG_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ESIG_ERR_RUNTIME;
  }
}

esig_status require(bool cond, const char* msg) {
  if (cond) return ESIG_OK;
  g_last_error = msg;
  return ESIG_ERR_INVALID_ARGUMENT;
}

nlohmann::json verify_document(const esig::RunConfig& cfg) {
  esig::VerifyOptions options;
  options.hursts = cfg.hursts;
  nlohmann::json suites = nlohmann::json::array();
  bool all_passed = true;
  if (cfg.suite == "all") {
    for (const auto& res : esig::run_all_suites(options)) {
      all_passed = all_passed && res.passed();
      suites.push_back(res.to_json());
    }
  } else {
    const esig::SuiteResult res = esig::run_suite(cfg.suite, options);
    all_passed = res.passed();
    suites.push_back(res.to_json());
  }
  return nlohmann::json{{"config", cfg.to_json()},
                        {"version", esig::kVersion},
                        {"passed", all_passed},
                        {"suites", std::move(suites)}};
}

}  // namespace

struct esig_model {
  std::unique_ptr<const esig::CovarianceModel> impl;
};

extern "C" {

const char* esig_version(void) { return esig::kVersion; }

const char* esig_last_error(void) { return g_last_error.c_str(); }

void esig_free_string(char* s) { std::free(s); }

esig_status esig_model_create(const char* spec_json, esig_model** out_model) {
  if (esig_status st = require(spec_json && out_model, "null argument")) return st;
  return guarded([&] {
    auto spec = esig::ModelSpec::from_json(nlohmann::json::parse(spec_json));
    *out_model = new esig_model{esig::make_model(spec)};
  });
}

void esig_model_free(esig_model* model) { delete model; }

#define ESIG_MODEL_EVAL(name, expr)                                             \
  if (esig_status st = require(model && out, "null argument")) return st;       \
  return guarded([&] { *out = (expr); })

esig_status esig_model_cov(const esig_model* model, double s, double t, double* out) {
  ESIG_MODEL_EVAL(cov, model->impl->cov(s, t));
}
esig_status esig_model_var(const esig_model* model, double t, double* out) {
  ESIG_MODEL_EVAL(var, model->impl->var(t));
}
esig_status esig_model_var_deriv(const esig_model* model, double t, double* out) {
  ESIG_MODEL_EVAL(var_deriv, model->impl->var_deriv(t));
}
esig_status esig_model_cov_d2(const esig_model* model, double s, double t, double* out) {
  ESIG_MODEL_EVAL(cov_d2, model->impl->cov_d2(s, t));
}
esig_status esig_model_cov_d12(const esig_model* model, double s, double t, double* out) {
  ESIG_MODEL_EVAL(cov_d12, model->impl->cov_d12(s, t));
}
esig_status esig_model_inc_cov(const esig_model* model, double s, double t, double u, double v,
                               double* out) {
  ESIG_MODEL_EVAL(inc_cov, model->impl->inc_cov(s, t, u, v));
}

#undef ESIG_MODEL_EVAL

esig_status esig_enumerate_pairings(int n, int m, char** out_json) {
  if (esig_status st = require(out_json != nullptr, "null argument")) return st;
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& diagram : esig::enumerate_pairings(n, m))
      arr.push_back(esig::to_json(diagram));
    *out_json = dup_string(arr.dump());
  });
}

esig_status esig_diagram_scalar(const esig_model* model, const char* diagram_json, double s,
                                double t, const char* quad_json, double* out_value,
                                double* out_err) {
  if (esig_status st = require(model && diagram_json && out_value, "null argument")) return st;
  return guarded([&] {
    const esig::Diagram diagram = esig::diagram_from_json(nlohmann::json::parse(diagram_json));
    esig::QuadratureConfig cfg;
    if (quad_json != nullptr)
      cfg = esig::QuadratureConfig::from_json(nlohmann::json::parse(quad_json));
    const esig::ValErr r = esig::diagram_scalar(diagram, *model->impl, s, t, cfg);
    *out_value = r.value;
    if (out_err != nullptr) *out_err = r.err;
  });
}

esig_status esig_run(const char* config_json, char** out_json) {
  if (esig_status st = require(config_json && out_json, "null argument")) return st;
  return guarded([&] {
    const esig::RunConfig cfg = esig::RunConfig::from_json(nlohmann::json::parse(config_json));
    nlohmann::json doc;
    if (cfg.subcommand == "compute")
      doc = esig::run_compute(cfg);
    else if (cfg.subcommand == "convergence")
      doc = esig::run_convergence(cfg);
    else if (cfg.subcommand == "sample")
      doc = esig::run_sample(cfg);
    else if (cfg.subcommand == "verify")
      doc = verify_document(cfg);
    else
      throw std::invalid_argument("unknown subcommand '" + cfg.subcommand +
                                  "' (expected compute|convergence|sample|verify)");
    *out_json = dup_string(doc.dump(2));
  });
}

esig_status esig_suites(char** out_json) {
  if (esig_status st = require(out_json != nullptr, "null argument")) return st;
  return guarded([&] {
    nlohmann::json arr = esig::available_suites();
    *out_json = dup_string(arr.dump());
  });
}

}  // extern "C"
