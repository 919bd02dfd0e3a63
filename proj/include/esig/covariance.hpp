#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace esig {

/// Scalar covariance structure of one component of a centred Gaussian process
/// with i.i.d. components and X_0 = 0. All evaluations are pure; instances are
/// immutable after construction and safe to share across threads.
class CovarianceModel {
 public:
  virtual ~CovarianceModel() = default;

  /// R(s,t) = E[X_s X_t].
  virtual double cov(double s, double t) const = 0;
  /// Variance function R(t) = R(t,t).
  virtual double var(double t) const { return cov(t, t); }
  /// R'(t), the derivative of the variance function, on (0,T).
  virtual double var_deriv(double t) const = 0;
  /// Second-argument partial derivative of R(s,t), defined off the diagonal.
  virtual double cov_d2(double s, double t) const = 0;
  /// Mixed second partial derivative of R(s,t). Throws std::domain_error on
  /// the diagonal s == t, where it need not exist.
  virtual double cov_d12(double s, double t) const = 0;

  /// E[X_{st} X_{uv}] = R(t,v) + R(s,u) - R(t,u) - R(s,v), exactly.
  double inc_cov(double s, double t, double u, double v) const {
    return cov(t, v) + cov(s, u) - cov(t, u) - cov(s, v);
  }

  // Gap-parameterised forms of the pairing integrands. Near-diagonal
  // evaluations carry power singularities whose mass extends below the
  // floating-point resolution of absolute times, so the integrators supply
  // exact gaps and the models must not reconstruct them by subtraction.

  /// d12 R(lo, lo + gap), gap > 0.
  virtual double d12_gap(double lo, double gap) const = 0;
  /// R'(lo + gap)/2 - d2 R(lo, lo + gap), the consecutive-pair integrand.
  virtual double onepair_gap(double lo, double gap) const = 0;
  /// d2 R(p + gap_hi, p) - d2 R(p + gap_lo, p), an arc integrated once
  /// across its later variable; 0 < gap_lo < gap_hi.
  virtual double d2_gap_diff(double p, double gap_lo, double gap_hi) const = 0;
  /// d2 R(p - gap_small, p) - d2 R(p - gap_big, p), an arc integrated once
  /// across its earlier variable; 0 < gap_small < gap_big.
  virtual double d2_below_diff(double p, double gap_small, double gap_big) const = 0;
  /// Half the increment variance E[X_{a, a+gap}^2] / 2.
  virtual double half_inc_var_gap(double a, double gap) const = 0;
  /// E[X_{c, c+g1} X_{a, a+g2}] for disjoint ordered intervals,
  /// a = c + g1 + gap_mid with gap_mid >= 0.
  virtual double inc_cov_disjoint(double c, double g1, double gap_mid, double g2) const = 0;

  /// Nominal horizon T of the process.
  virtual double horizon() const = 0;
  /// Right end of the interval on which evaluations are permitted (below T
  /// for the bridge, which degenerates at T).
  virtual double usable_horizon() const { return horizon(); }
  /// Hoelder exponent H of the sample paths (Hurst parameter for fBm).
  virtual double hoelder() const = 0;

  virtual std::string name() const = 0;
};

enum class ModelKind { fbm, bm, bridge, ou };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

/// Parameter set identifying a shipped model instance.
struct ModelSpec {
  ModelKind kind = ModelKind::bm;
  double hurst = 0.5;       // fbm only, in (1/4, 1)
  double horizon = 1.0;     // all models
  double sigma = 1.0;       // ou only, > 0
  double theta = 1.0;       // ou only, > 0
  double bridge_eps = 0.0;  // bridge only; 0 means the default 1e-3 * T

  nlohmann::json to_json() const;
  static ModelSpec from_json(const nlohmann::json& j);
};

/// Construct a model from its spec. Throws std::invalid_argument for
/// out-of-range parameters.
std::unique_ptr<const CovarianceModel> make_model(const ModelSpec& spec);

/// Empirical scan of the regularity-bound ratios
///   |d12 R(s,t)| (t-s)^{2-2H},  |R'(t)/2 - d2 R(s,t)| (t-s)^{1-2H},
///   |R'(t)| t^{1-2H},           inc_cov(s,t,s,t) (t-s)^{-2H}
/// over random admissible (s,t), plus a dyadic-shrink growth probe.
struct BoundsReport {
  int n_samples = 0;
  double max_d12_ratio = 0.0;
  double max_onepair_ratio = 0.0;
  double max_dvar_ratio = 0.0;
  double max_inc_var_ratio = 0.0;
  // Largest factor by which each ratio grew when t-s was halved across six
  // dyadic scales; values staying near 1 (or below) indicate a bound holds.
  double growth_d12 = 0.0;
  double growth_onepair = 0.0;
  double growth_dvar = 0.0;
  double growth_inc_var = 0.0;

  nlohmann::json to_json() const;
};

BoundsReport check_bounds(const CovarianceModel& model, int n_samples, std::uint64_t seed = 1);

}  // namespace esig
