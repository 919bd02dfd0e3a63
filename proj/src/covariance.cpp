#include "esig/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "esig/rng.hpp"

namespace esig {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

[[noreturn]] void diagonal_error(const char* model) {
  throw std::domain_error(std::string(model) + ": cov_d12 is not defined on the diagonal s == t");
}

// All closed forms below are written for s <= t and reflected by symmetry of R
// for s > t, so each branch has a single source of truth.

class FbmModel final : public CovarianceModel {
 public:
  FbmModel(double hurst, double horizon) : h_(hurst), t_(horizon) {
    require(hurst > 0.25 && hurst < 1.0, "fbm: hurst must lie in (1/4, 1)");
    require(horizon > 0.0, "fbm: horizon must be positive");
  }

  double cov(double s, double t) const override {
    if (s > t) std::swap(s, t);
    return 0.5 * (std::pow(t, 2 * h_) + std::pow(s, 2 * h_) - std::pow(t - s, 2 * h_));
  }
  double var(double t) const override { return std::pow(t, 2 * h_); }
  double var_deriv(double t) const override { return 2 * h_ * std::pow(t, 2 * h_ - 1); }
  double cov_d2(double s, double t) const override {
    if (s < t) return h_ * (std::pow(t, 2 * h_ - 1) - std::pow(t - s, 2 * h_ - 1));
    return h_ * (std::pow(t, 2 * h_ - 1) + std::pow(s - t, 2 * h_ - 1));
  }
  double cov_d12(double s, double t) const override {
    if (s == t) diagonal_error("fbm");
    return h_ * (2 * h_ - 1) * std::pow(std::abs(t - s), 2 * h_ - 2);
  }
  double d12_gap(double, double gap) const override {
    return h_ * (2 * h_ - 1) * std::pow(gap, 2 * h_ - 2);
  }
  double onepair_gap(double, double gap) const override {
    return h_ * std::pow(gap, 2 * h_ - 1);
  }
  double d2_gap_diff(double, double gap_lo, double gap_hi) const override {
    return h_ * (std::pow(gap_hi, 2 * h_ - 1) - std::pow(gap_lo, 2 * h_ - 1));
  }
  double d2_below_diff(double, double gap_small, double gap_big) const override {
    return h_ * (std::pow(gap_big, 2 * h_ - 1) - std::pow(gap_small, 2 * h_ - 1));
  }
  double half_inc_var_gap(double, double gap) const override {
    return 0.5 * std::pow(gap, 2 * h_);
  }
  double inc_cov_disjoint(double, double g1, double mid, double g2) const override {
    return 0.5 * (std::pow(g1 + mid + g2, 2 * h_) + std::pow(mid, 2 * h_) -
                  std::pow(g1 + mid, 2 * h_) - std::pow(mid + g2, 2 * h_));
  }
  double horizon() const override { return t_; }
  double hoelder() const override { return h_; }
  std::string name() const override { return "fbm"; }

 private:
  double h_, t_;
};

class BmModel final : public CovarianceModel {
 public:
  explicit BmModel(double horizon) : t_(horizon) {
    require(horizon > 0.0, "bm: horizon must be positive");
  }

  double cov(double s, double t) const override { return std::min(s, t); }
  double var(double t) const override { return t; }
  double var_deriv(double) const override { return 1.0; }
  double cov_d2(double s, double t) const override { return t < s ? 1.0 : 0.0; }
  double cov_d12(double s, double t) const override {
    if (s == t) diagonal_error("bm");
    return 0.0;
  }
  double d12_gap(double, double) const override { return 0.0; }
  double onepair_gap(double, double) const override { return 0.5; }
  double d2_gap_diff(double, double, double) const override { return 0.0; }
  double d2_below_diff(double, double, double) const override { return 0.0; }
  double half_inc_var_gap(double, double gap) const override { return 0.5 * gap; }
  double inc_cov_disjoint(double, double, double, double) const override { return 0.0; }
  double horizon() const override { return t_; }
  double hoelder() const override { return 0.5; }
  std::string name() const override { return "bm"; }

 private:
  double t_;
};

class BridgeModel final : public CovarianceModel {
 public:
  BridgeModel(double horizon, double eps) : t_(horizon), eps_(eps) {
    require(horizon > 0.0, "bridge: horizon must be positive");
    require(eps > 0.0 && eps < horizon, "bridge: eps must lie in (0, T)");
  }

  double cov(double s, double t) const override {
    if (s > t) std::swap(s, t);
    return s * (1.0 - t / t_);
  }
  double var(double t) const override { return t * (1.0 - t / t_); }
  double var_deriv(double t) const override { return 1.0 - 2.0 * t / t_; }
  double cov_d2(double s, double t) const override {
    if (s < t) return -s / t_;
    return 1.0 - s / t_;
  }
  double cov_d12(double s, double t) const override {
    if (s == t) diagonal_error("bridge");
    return -1.0 / t_;
  }
  double d12_gap(double, double) const override { return -1.0 / t_; }
  double onepair_gap(double, double gap) const override { return 0.5 - gap / t_; }
  double d2_gap_diff(double, double gap_lo, double gap_hi) const override {
    return -(gap_hi - gap_lo) / t_;
  }
  double d2_below_diff(double, double gap_small, double gap_big) const override {
    return (gap_small - gap_big) / t_;
  }
  double half_inc_var_gap(double, double gap) const override {
    return 0.5 * gap * (1.0 - gap / t_);
  }
  double inc_cov_disjoint(double, double g1, double, double g2) const override {
    return -g1 * g2 / t_;
  }
  double horizon() const override { return t_; }
  double usable_horizon() const override { return t_ - eps_; }
  double hoelder() const override { return 0.5; }
  std::string name() const override { return "bridge"; }

 private:
  double t_, eps_;
};

class OuModel final : public CovarianceModel {
 public:
  OuModel(double sigma, double theta, double horizon) : s_(sigma), th_(theta), t_(horizon) {
    require(sigma > 0.0, "ou: sigma must be positive");
    require(theta > 0.0, "ou: theta must be positive");
    require(horizon > 0.0, "ou: horizon must be positive");
  }

  // R(s,t) = sigma^2/(2 theta) (e^{-theta(t-s)} - e^{-theta(s+t)}), s <= t.
  double cov(double s, double t) const override {
    if (s > t) std::swap(s, t);
    return s_ * s_ / (2 * th_) * (std::exp(-th_ * (t - s)) - std::exp(-th_ * (s + t)));
  }
  double var(double t) const override {
    return s_ * s_ / (2 * th_) * (1.0 - std::exp(-2 * th_ * t));
  }
  double var_deriv(double t) const override { return s_ * s_ * std::exp(-2 * th_ * t); }
  double cov_d2(double s, double t) const override {
    if (s < t)
      return 0.5 * s_ * s_ * (std::exp(-th_ * (s + t)) - std::exp(-th_ * (t - s)));
    return 0.5 * s_ * s_ * (std::exp(-th_ * (s + t)) + std::exp(-th_ * (s - t)));
  }
  double cov_d12(double s, double t) const override {
    if (s == t) diagonal_error("ou");
    return -0.5 * s_ * s_ * th_ *
           (std::exp(-th_ * (s + t)) + std::exp(-th_ * std::abs(t - s)));
  }
  double d12_gap(double lo, double gap) const override {
    return -0.5 * s_ * s_ * th_ * (std::exp(-th_ * (2 * lo + gap)) + std::exp(-th_ * gap));
  }
  double onepair_gap(double lo, double gap) const override {
    return 0.5 * s_ * s_ *
           (std::exp(-th_ * gap) + std::exp(-th_ * (2 * lo + gap)) * std::expm1(-th_ * gap));
  }
  double d2_gap_diff(double p, double gap_lo, double gap_hi) const override {
    return 0.5 * s_ * s_ * std::expm1(-th_ * (gap_hi - gap_lo)) *
           (std::exp(-th_ * (2 * p + gap_lo)) + std::exp(-th_ * gap_lo));
  }
  double d2_below_diff(double p, double gap_small, double gap_big) const override {
    const double delta = gap_big - gap_small;
    return 0.5 * s_ * s_ *
           (std::exp(-th_ * gap_small) * std::expm1(-th_ * delta) -
            std::exp(-th_ * (2 * p - gap_small)) * std::expm1(th_ * delta));
  }
  double half_inc_var_gap(double a, double gap) const override {
    const double u = std::expm1(-th_ * gap);
    return s_ * s_ / (4 * th_) * (-2 * u - std::exp(-2 * th_ * a) * u * u);
  }
  double inc_cov_disjoint(double c, double g1, double mid, double g2) const override {
    const double a = c + g1 + mid;
    const double u1 = -std::expm1(-th_ * g1);
    const double u2 = -std::expm1(-th_ * g2);
    return -s_ * s_ / (2 * th_) * std::exp(-th_ * a) * u2 *
           (std::exp(-th_ * c) * u1 + std::exp(th_ * c) * std::expm1(th_ * g1));
  }
  double horizon() const override { return t_; }
  double hoelder() const override { return 0.5; }
  std::string name() const override { return "ou"; }

 private:
  double s_, th_, t_;
};

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::fbm: return "fbm";
    case ModelKind::bm: return "bm";
    case ModelKind::bridge: return "bridge";
    case ModelKind::ou: return "ou";
  }
  throw std::invalid_argument("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "fbm") return ModelKind::fbm;
  if (s == "bm") return ModelKind::bm;
  if (s == "bridge") return ModelKind::bridge;
  if (s == "ou") return ModelKind::ou;
  throw std::invalid_argument("unknown model kind '" + s + "' (expected fbm|bm|bridge|ou)");
}

nlohmann::json ModelSpec::to_json() const {
  nlohmann::json j{{"kind", to_string(kind)}, {"horizon", horizon}};
  switch (kind) {
    case ModelKind::fbm: j["hurst"] = hurst; break;
    case ModelKind::bm: break;
    case ModelKind::bridge: j["bridge_eps"] = bridge_eps; break;
    case ModelKind::ou:
      j["sigma"] = sigma;
      j["theta"] = theta;
      break;
  }
  return j;
}

ModelSpec ModelSpec::from_json(const nlohmann::json& j) {
  ModelSpec spec;
  spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
  spec.horizon = j.value("horizon", 1.0);
  spec.hurst = j.value("hurst", 0.5);
  spec.sigma = j.value("sigma", 1.0);
  spec.theta = j.value("theta", 1.0);
  spec.bridge_eps = j.value("bridge_eps", 0.0);
  return spec;
}

std::unique_ptr<const CovarianceModel> make_model(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::fbm:
      return std::make_unique<FbmModel>(spec.hurst, spec.horizon);
    case ModelKind::bm:
      return std::make_unique<BmModel>(spec.horizon);
    case ModelKind::bridge: {
      const double eps = spec.bridge_eps > 0.0 ? spec.bridge_eps : 1e-3 * spec.horizon;
      return std::make_unique<BridgeModel>(spec.horizon, eps);
    }
    case ModelKind::ou:
      return std::make_unique<OuModel>(spec.sigma, spec.theta, spec.horizon);
  }
  throw std::invalid_argument("make_model: unknown kind");
}

nlohmann::json BoundsReport::to_json() const {
  return nlohmann::json{
      {"n_samples", n_samples},
      {"max_d12_ratio", max_d12_ratio},
      {"max_onepair_ratio", max_onepair_ratio},
      {"max_dvar_ratio", max_dvar_ratio},
      {"max_inc_var_ratio", max_inc_var_ratio},
      {"growth_d12", growth_d12},
      {"growth_onepair", growth_onepair},
      {"growth_dvar", growth_dvar},
      {"growth_inc_var", growth_inc_var},
  };
}

BoundsReport check_bounds(const CovarianceModel& model, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("check_bounds: n_samples must be >= 1");
  BoundsReport rep;
  rep.n_samples = n_samples;
  const double hi = model.usable_horizon();
  const double h = model.hoelder();
  SplitMix64 rng(seed);

  auto ratios = [&](double s, double t, double r[4]) {
    const double gap = t - s;
    r[0] = std::abs(model.cov_d12(s, t)) * std::pow(gap, 2 - 2 * h);
    r[1] = std::abs(0.5 * model.var_deriv(t) - model.cov_d2(s, t)) * std::pow(gap, 1 - 2 * h);
    r[2] = std::abs(model.var_deriv(t)) * std::pow(t, 1 - 2 * h);
    r[3] = model.inc_cov(s, t, s, t) * std::pow(gap, -2 * h);
  };

  for (int i = 0; i < n_samples; ++i) {
    double s = rng.uniform() * hi;
    double t = rng.uniform() * hi;
    if (s > t) std::swap(s, t);
    if (t - s < 1e-12 * hi || t < 1e-12 * hi) continue;
    double r[4];
    ratios(s, t, r);
    rep.max_d12_ratio = std::max(rep.max_d12_ratio, r[0]);
    rep.max_onepair_ratio = std::max(rep.max_onepair_ratio, r[1]);
    rep.max_dvar_ratio = std::max(rep.max_dvar_ratio, r[2]);
    rep.max_inc_var_ratio = std::max(rep.max_inc_var_ratio, r[3]);

    // Shrink t toward s across six dyadic scales; a bounded ratio keeps its
    // smallest-gap value comparable to the median across scales, a diverging
    // one leaves it far above.
    double scales[7][4];
    int n_scales = 0;
    double cur_t = t;
    for (int k = 0; k < 7 && cur_t - s > 1e-10 * hi; ++k) {
      ratios(s, cur_t, scales[n_scales++]);
      cur_t = s + (cur_t - s) / 2;
    }
    if (n_scales >= 3) {
      for (int q = 0; q < 4; ++q) {
        std::vector<double> vals;
        for (int k = 0; k < n_scales; ++k) vals.push_back(scales[k][q]);
        const double last = vals.back();
        std::nth_element(vals.begin(), vals.begin() + n_scales / 2, vals.end());
        const double median = vals[static_cast<std::size_t>(n_scales / 2)];
        const double growth = last / (median + 1e-300);
        double* slot = q == 0   ? &rep.growth_d12
                       : q == 1 ? &rep.growth_onepair
                       : q == 2 ? &rep.growth_dvar
                                : &rep.growth_inc_var;
        *slot = std::max(*slot, growth);
      }
    }
  }
  return rep;
}

}  // namespace esig
