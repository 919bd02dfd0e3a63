#include <doctest.h>

#include <cmath>

#include "esig/covariance.hpp"
#include "esig/rng.hpp"

using namespace esig;

namespace {

ModelSpec fbm(double h, double T = 1.0) {
  ModelSpec s;
  s.kind = ModelKind::fbm;
  s.hurst = h;
  s.horizon = T;
  return s;
}

ModelSpec ou_spec(double sigma = 1.3, double theta = 0.8, double T = 1.0) {
  ModelSpec s;
  s.kind = ModelKind::ou;
  s.sigma = sigma;
  s.theta = theta;
  s.horizon = T;
  return s;
}

ModelSpec bridge_spec(double T = 1.0, double eps = 0.0) {
  ModelSpec s;
  s.kind = ModelKind::bridge;
  s.horizon = T;
  s.bridge_eps = eps;
  return s;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_model(fbm(0.2)), std::invalid_argument);
  CHECK_THROWS_AS(make_model(fbm(1.0)), std::invalid_argument);
  ModelSpec bad_ou = ou_spec();
  bad_ou.theta = -1.0;
  CHECK_THROWS_AS(make_model(bad_ou), std::invalid_argument);
  CHECK_NOTHROW(make_model(fbm(0.26)));
}

TEST_CASE("fbm closed forms") {
  const auto m = make_model(fbm(0.75));
  CHECK(m->cov_d12(0.0, 1.0) == doctest::Approx(0.375));  // H(2H-1)(t-s)^{2H-2}
  CHECK(m->inc_cov(0, 1, 0, 1) == doctest::Approx(1.0));
  CHECK(m->cov(0.0, 1.0) == doctest::Approx(0.0));
  CHECK(m->var(0.5) == doctest::Approx(std::pow(0.5, 1.5)));
  CHECK_THROWS_AS(m->cov_d12(0.3, 0.3), std::domain_error);
}

TEST_CASE("fbm consec integrand is H gap^{2H-1}") {
  for (double h : {0.3, 0.4, 0.75}) {
    const auto m = make_model(fbm(h));
    for (double s : {0.1, 0.4}) {
      const double t = s + 0.37;
      const double lhs = 0.5 * m->var_deriv(t) - m->cov_d2(s, t);
      CHECK(lhs == doctest::Approx(h * std::pow(t - s, 2 * h - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bm degenerates fbm at H = 1/2") {
  const auto bm = make_model({ModelKind::bm, 0.5, 1.0, 1.0, 1.0, 0.0});
  CHECK(bm->cov(0.3, 0.8) == doctest::Approx(0.3));
  CHECK(bm->cov_d12(0.2, 0.7) == 0.0);
  CHECK(0.5 * bm->var_deriv(0.9) - bm->cov_d2(0.3, 0.9) == doctest::Approx(0.5));
  CHECK(bm->inc_cov(0.2, 0.5, 0.2, 0.5) == doctest::Approx(0.3));
}

TEST_CASE("bridge integrands match the linear forms") {
  const auto m = make_model(bridge_spec(1.0));
  CHECK(m->cov_d12(0.2, 0.6) == doctest::Approx(-1.0));
  // R'(t)/2 - d2R(s,t) = 1/2 - (t-s)/T, zero at (0.25, 0.75)
  CHECK(0.5 * m->var_deriv(0.75) - m->cov_d2(0.25, 0.75) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(m->usable_horizon() == doctest::Approx(1.0 - 1e-3));
}

TEST_CASE("ou derivatives agree with central finite differences") {
  const auto m = make_model(ou_spec());
  SplitMix64 rng(23);
  const double h = 1e-5;
  double worst_d2 = 0.0, worst_d12 = 0.0, worst_dvar = 0.0;
  for (int i = 0; i < 100; ++i) {
    double s = rng.uniform(), t = rng.uniform();
    if (s > t) std::swap(s, t);
    if (t - s < 0.05) continue;
    const double fd_d2 = (m->cov(s, t + h) - m->cov(s, t - h)) / (2 * h);
    worst_d2 = std::max(worst_d2, std::abs(fd_d2 - m->cov_d2(s, t)));
    const double fd_d12 = (m->cov(s + h, t + h) - m->cov(s + h, t - h) - m->cov(s - h, t + h) +
                           m->cov(s - h, t - h)) /
                          (4 * h * h);
    worst_d12 = std::max(worst_d12, std::abs(fd_d12 - m->cov_d12(s, t)));
    const double fd_var = (m->var(t + h) - m->var(t - h)) / (2 * h);
    worst_dvar = std::max(worst_dvar, std::abs(fd_var - m->var_deriv(t)));
  }
  CHECK(worst_d2 <= 1e-8);
  CHECK(worst_d12 <= 1e-6);
  CHECK(worst_dvar <= 1e-8);
}

TEST_CASE("inc_cov is the four-point covariance combination") {
  for (const auto& spec : {fbm(0.35), ou_spec(), bridge_spec(1.2)}) {
    const auto m = make_model(spec);
    SplitMix64 rng(3);
    for (int i = 0; i < 20; ++i) {
      const double hi = m->usable_horizon();
      const double s = rng.uniform() * hi, t = rng.uniform() * hi;
      const double u = rng.uniform() * hi, v = rng.uniform() * hi;
      const double expect = m->cov(t, v) + m->cov(s, u) - m->cov(t, u) - m->cov(s, v);
      CHECK(m->inc_cov(s, t, u, v) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

// The two one-sided diagonal limits of d2R sum to R'; when R is C1 on the
// diagonal (fbm with H > 1/2) each equals R'/2 on its own. The one-sided
// limit converges like gap^{2H-1}, so the probe gap must shrink as H drops
// toward 1/2.
TEST_CASE("diagonal derivative identity") {
  for (const auto& spec : {fbm(0.75), fbm(0.9)}) {
    const auto m = make_model(spec);
    const double eps = 1e-13;
    for (double t : {0.3, 0.8}) {
      CHECK(2 * m->cov_d2(t - eps, t) == doctest::Approx(m->var_deriv(t)).epsilon(1e-5));
    }
  }
  const double eps = 1e-7;
  for (const auto& spec :
       {fbm(0.6), ou_spec(), bridge_spec(1.0), ModelSpec{ModelKind::bm, 0.5, 1.0, 1.0, 1.0, 0.0}}) {
    const auto m = make_model(spec);
    for (double t : {0.3, 0.8}) {
      const double below = m->cov_d2(t - eps, t);
      const double above = m->cov_d2(t + eps, t);
      CHECK(below + above == doctest::Approx(m->var_deriv(t)).epsilon(1e-5));
    }
  }
}

TEST_CASE("bound ratios are exactly scale-free for fbm") {
  const auto m = make_model(fbm(0.4));
  const auto rep = check_bounds(*m, 200, 11);
  // Homogeneity: halving t-s never grows any ratio.
  CHECK(rep.growth_d12 <= 1.0 + 1e-10);
  CHECK(rep.growth_onepair <= 1.0 + 1e-10);
  CHECK(rep.growth_inc_var <= 1.0 + 1e-10);
  CHECK(rep.max_inc_var_ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bound ratios stay bounded for the semimartingale models") {
  for (const auto& spec : {bridge_spec(1.0), ou_spec()}) {
    const auto m = make_model(spec);
    const auto rep = check_bounds(*m, 200, 19);
    CHECK(rep.growth_d12 <= 4.0);
    CHECK(rep.growth_onepair <= 4.0);
    CHECK(rep.max_d12_ratio < 10.0);
  }
}

TEST_CASE("bm increment variance is the gap") {
  const auto m = make_model({ModelKind::bm, 0.5, 1.0, 1.0, 1.0, 0.0});
  CHECK(m->inc_cov(0.25, 0.75, 0.25, 0.75) == doctest::Approx(0.5).epsilon(1e-14));
}
