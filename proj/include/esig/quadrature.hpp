#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace esig {

/// Controls for the simplex integrators.
struct QuadratureConfig {
  double rel_tol = 1e-6;          // target for quadrature dimension <= 4
  double rel_tol_highdim = 1e-3;  // target for dimensions 5..6
  double abs_tol = 1e-13;
  int max_depth = 48;       // bisection depth per 1-d integral
  int max_segments = 2048;  // subdivision budget per 1-d integral
  // Mesh-grading strength toward singular hyperplanes; 0 selects 1/(2H),
  // floored at 1 (no grading).
  double grading_exponent = 0.0;
  int mc_fallback_samples = 100000;  // quasi-Monte Carlo fallback budget
  std::uint64_t rng_seed = 42;

  // How much of the integrand is folded into model antiderivatives before
  // numerical quadrature. `none` integrates all retained variables
  // numerically; `tail` folds the innermost variable only; `full` folds every
  // variable whose sole factor admits a closed antiderivative.
  enum class Reduction { none, tail, full };
  Reduction reduction = Reduction::full;

  // Deterministic nested quadrature up to this many dimensions; beyond it the
  // seeded quasi-Monte Carlo fallback is used and a standard error reported.
  int max_det_dims = 4;

  double effective_rel_tol(int dims) const { return dims <= 4 ? rel_tol : rel_tol_highdim; }

  nlohmann::json to_json() const;
  static QuadratureConfig from_json(const nlohmann::json& j);
};

/// Grading strength that flattens every power singularity the pairing
/// integrands produce at an interval endpoint: gap^{2H-1} from a consecutive
/// pair, gap^{4H-2} from an arc against a vanishing increment covariance, and
/// for H > 1/2 the bare arc gap^{2H-2}. A factor gap^b becomes gap^{g(1+b)-1}
/// under the map x = a + c tau^g, so g = 1/(1+b) per factor.
inline double auto_grading(double hoelder) {
  double g = std::max(1.0, 0.5 / hoelder);
  g = std::max(g, 1.0 / (4.0 * hoelder - 1.0));
  if (hoelder > 0.5) g = std::max(g, 1.0 / (2.0 * hoelder - 1.0));
  return g;
}

/// A value together with a propagated error bound (deterministic rules) or a
/// standard error (stochastic fallback).
struct ValErr {
  double value = 0.0;
  double err = 0.0;
};

namespace quad_detail {

// Gauss 7 / Kronrod 15 pair (QUADPACK abscissae and weights).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGauss7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct SegmentResult {
  double value = 0.0;
  double rule_err = 0.0;
  double inherited_err = 0.0;
};

// One Gauss-Kronrod 15 application on [a, b]; f maps double -> ValErr and the
// inherited error of the evaluations is propagated linearly.
template <class F>
SegmentResult gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  double inherited = 0.0;
  auto probe = [&](double x, double w) {
    ValErr r = f(x);
    inherited += w * r.err;
    return r.value;
  };
  double resk = 0.0, resg = 0.0, resabs = 0.0;
  const double f_center = probe(c, kGk15WeightsK[7]);
  fv[7] = f_center;
  resk += kGk15WeightsK[7] * f_center;
  resg += kGauss7Weights[3] * f_center;
  resabs += kGk15WeightsK[7] * std::abs(f_center);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kGk15Nodes[i];
    const double f1 = probe(c - dx, kGk15WeightsK[i]);
    const double f2 = probe(c + dx, kGk15WeightsK[i]);
    fv[i] = f1;
    fv[14 - i] = f2;
    resk += kGk15WeightsK[i] * (f1 + f2);
    resabs += kGk15WeightsK[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) resg += kGauss7Weights[i / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kGk15WeightsK[7] * std::abs(f_center - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kGk15WeightsK[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  SegmentResult out;
  out.value = resk * h;
  out.inherited_err = inherited * h;
  double err = std::abs(resk - resg) * h;
  resasc *= std::abs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  out.rule_err = err;
  return out;
}

}  // namespace quad_detail

struct QuadOutcome {
  double value = 0.0;
  double err = 0.0;  // rule error + inherited error of inner evaluations
  long evals = 0;
  bool converged = true;
};

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
/// f: double -> ValErr; inherited errors are propagated into `err`.
template <class F>
QuadOutcome adaptive_gk(F&& f, double a, double b, double rel_tol, double abs_tol,
                        int max_segments = 2048, int max_depth = 48) {
  QuadOutcome out;
  if (!(b > a)) return out;

  struct Seg {
    double a, b, value, rule_err, inherited;
    int depth;
  };
  std::vector<Seg> segs;
  auto push = [&](double lo, double hi, int depth) {
    auto r = quad_detail::gk15(f, lo, hi);
    out.evals += 15;
    segs.push_back({lo, hi, r.value, r.rule_err, r.inherited_err, depth});
  };
  push(a, b, 0);

  while (true) {
    double total = 0.0, rule_err = 0.0;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      rule_err += segs[i].rule_err;
      if (segs[i].rule_err > worst_err && segs[i].depth < max_depth) {
        worst_err = segs[i].rule_err;
        worst = i;
      }
    }
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (rule_err <= target || static_cast<int>(segs.size()) >= max_segments || worst_err <= 0.0) {
      double inherited = 0.0;
      for (const auto& s : segs) inherited += s.inherited;
      out.value = total;
      out.err = rule_err + std::abs(inherited);
      out.converged = rule_err <= target;
      return out;
    }
    Seg s = segs[worst];
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(worst));
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      segs.push_back(s);  // interval at floating-point resolution
      double inherited = 0.0, totalv = 0.0, err = 0.0;
      for (const auto& q : segs) {
        inherited += q.inherited;
        totalv += q.value;
        err += q.rule_err;
      }
      out.value = totalv;
      out.err = err + std::abs(inherited);
      out.converged = false;
      return out;
    }
    push(s.a, mid, s.depth + 1);
    push(mid, s.b, s.depth + 1);
  }
}

/// Adaptive integration with power-law mesh grading toward both endpoints:
/// [a,b] is split at the midpoint and each half is mapped by x = end +/-
/// (m-end) tau^g, which turns an endpoint power singularity of the integrand
/// into a bounded factor before the adaptive rule runs.
template <class F>
QuadOutcome graded_adaptive_gk(F&& f, double a, double b, double rel_tol, double abs_tol,
                               double grading, int max_segments = 2048, int max_depth = 48) {
  QuadOutcome out;
  if (!(b > a)) return out;
  if (grading <= 1.0) return adaptive_gk(f, a, b, rel_tol, abs_tol, max_segments, max_depth);

  const double m = 0.5 * (a + b);
  const double g = grading;
  // Nodes that collapse onto an endpoint at floating-point resolution carry a
  // jacobian below representable significance; their contribution is dropped.
  auto left = [&](double tau) -> ValErr {
    const double x = a + (m - a) * std::pow(tau, g);
    if (!(x > a)) return {0.0, 0.0};
    ValErr r = f(x);
    const double jac = g * (m - a) * std::pow(tau, g - 1.0);
    return {r.value * jac, r.err * jac};
  };
  auto right = [&](double tau) -> ValErr {
    const double x = b - (b - m) * std::pow(tau, g);
    if (!(x < b)) return {0.0, 0.0};
    ValErr r = f(x);
    const double jac = g * (b - m) * std::pow(tau, g - 1.0);
    return {r.value * jac, r.err * jac};
  };
  QuadOutcome lo = adaptive_gk(left, 0.0, 1.0, rel_tol, 0.5 * abs_tol, max_segments / 2, max_depth);
  QuadOutcome hi = adaptive_gk(right, 0.0, 1.0, rel_tol, 0.5 * abs_tol, max_segments / 2, max_depth);
  out.value = lo.value + hi.value;
  out.err = lo.err + hi.err;
  out.evals = lo.evals + hi.evals;
  out.converged = lo.converged && hi.converged;
  return out;
}

}  // namespace esig
