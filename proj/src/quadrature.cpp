#include "esig/quadrature.hpp"

#include <stdexcept>

namespace esig {

namespace {

std::string reduction_name(QuadratureConfig::Reduction r) {
  switch (r) {
    case QuadratureConfig::Reduction::none: return "none";
    case QuadratureConfig::Reduction::tail: return "tail";
    case QuadratureConfig::Reduction::full: return "full";
  }
  throw std::invalid_argument("unknown reduction");
}

QuadratureConfig::Reduction reduction_from_name(const std::string& s) {
  if (s == "none") return QuadratureConfig::Reduction::none;
  if (s == "tail") return QuadratureConfig::Reduction::tail;
  if (s == "full") return QuadratureConfig::Reduction::full;
  throw std::invalid_argument("unknown reduction '" + s + "' (expected none|tail|full)");
}

}  // namespace

nlohmann::json QuadratureConfig::to_json() const {
  return nlohmann::json{
      {"rel_tol", rel_tol},
      {"rel_tol_highdim", rel_tol_highdim},
      {"abs_tol", abs_tol},
      {"max_depth", max_depth},
      {"max_segments", max_segments},
      {"grading_exponent", grading_exponent},
      {"mc_fallback_samples", mc_fallback_samples},
      {"rng_seed", rng_seed},
      {"reduction", reduction_name(reduction)},
      {"max_det_dims", max_det_dims},
  };
}

QuadratureConfig QuadratureConfig::from_json(const nlohmann::json& j) {
  QuadratureConfig cfg;
  cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
  cfg.rel_tol_highdim = j.value("rel_tol_highdim", cfg.rel_tol_highdim);
  cfg.abs_tol = j.value("abs_tol", cfg.abs_tol);
  cfg.max_depth = j.value("max_depth", cfg.max_depth);
  cfg.max_segments = j.value("max_segments", cfg.max_segments);
  cfg.grading_exponent = j.value("grading_exponent", cfg.grading_exponent);
  cfg.mc_fallback_samples = j.value("mc_fallback_samples", cfg.mc_fallback_samples);
  cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
  if (j.contains("reduction")) cfg.reduction = reduction_from_name(j.at("reduction").get<std::string>());
  cfg.max_det_dims = j.value("max_det_dims", cfg.max_det_dims);
  if (cfg.rel_tol <= 0 || cfg.rel_tol_highdim <= 0 || cfg.abs_tol <= 0)
    throw std::invalid_argument("quadrature tolerances must be positive");
  return cfg;
}

}  // namespace esig
