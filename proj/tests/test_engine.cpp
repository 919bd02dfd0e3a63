#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "esig/engine.hpp"
#include "esig/errors.hpp"
#include "esig/quadrature.hpp"

using namespace esig;

namespace {

ModelSpec fbm(double h, double T = 1.0) {
  ModelSpec s;
  s.kind = ModelKind::fbm;
  s.hurst = h;
  s.horizon = T;
  return s;
}

const ModelSpec kBm{ModelKind::bm, 0.5, 1.0, 1.0, 1.0, 0.0};
const ModelSpec kOu{ModelKind::ou, 0.5, 1.0, 1.1, 0.7, 0.0};
const ModelSpec kBridge{ModelKind::bridge, 0.5, 1.25, 1.0, 1.0, 0.0};

QuadratureConfig with_reduction(QuadratureConfig::Reduction r) {
  QuadratureConfig cfg;
  cfg.reduction = r;
  return cfg;
}

// Frozen independently derived constants for fbm over [0,1] at H = 3/4:
// (H/4) B(2H,2H) = 3 pi / 128, (2H-1)/(8(4H-1)) = 1/32, and the crossing
// value H/(4(4H-1)) minus the first.
constexpr double kCc075 = 0.07363107781851077;
constexpr double kNest075 = 0.03125;
constexpr double kCross075 = 0.02011892218148923;

double beta_2h(double h) {
  auto f = [h](double u) -> ValErr {
    return {std::pow(u, 2 * h - 1) * std::pow(1 - u, 2 * h - 1), 0.0};
  };
  return graded_adaptive_gk(f, 0.0, 1.0, 1e-12, 1e-15, std::max(1.0, 0.5 / h)).value;
}

}  // namespace

TEST_CASE("one-pair diagram is the exact covariance combination") {
  for (const auto& spec : {fbm(0.3), fbm(0.75), kBm, kOu, kBridge}) {
    const auto m = make_model(spec);
    const Diagram d(2, {{1, 2}});
    const double s = 0.2, t = 0.9;
    const double direct = 0.5 * (m->var(s) + m->var(t)) - m->cov(s, t);

    const ValErr full = diagram_scalar(d, *m, s, t, with_reduction(QuadratureConfig::Reduction::full));
    CHECK(full.value == doctest::Approx(direct).epsilon(1e-14));
    CHECK(full.err == 0.0);

    const ValErr numeric =
        diagram_scalar(d, *m, s, t, with_reduction(QuadratureConfig::Reduction::none));
    CHECK(numeric.value == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("level-4 fbm diagram values at H = 3/4") {
  const auto m = make_model(fbm(0.75));
  QuadratureConfig cfg;
  CHECK(diagram_scalar(Diagram(4, {{1, 2}, {3, 4}}), *m, 0, 1, cfg).value ==
        doctest::Approx(kCc075).epsilon(1e-6));
  CHECK(diagram_scalar(Diagram(4, {{1, 4}, {2, 3}}), *m, 0, 1, cfg).value ==
        doctest::Approx(kNest075).epsilon(1e-6));
  CHECK(diagram_scalar(Diagram(4, {{1, 3}, {2, 4}}), *m, 0, 1, cfg).value ==
        doctest::Approx(kCross075).epsilon(1e-6));
}

TEST_CASE("level-4 fbm diagram values at H = 0.3 against the Beta oracle") {
  const double h = 0.3;
  const auto m = make_model(fbm(h));
  QuadratureConfig cfg;
  const double cb = beta_2h(h);
  CHECK(diagram_scalar(Diagram(4, {{1, 2}, {3, 4}}), *m, 0, 1, cfg).value ==
        doctest::Approx(h / 4 * cb).epsilon(1e-6));
  CHECK(diagram_scalar(Diagram(4, {{1, 4}, {2, 3}}), *m, 0, 1, cfg).value ==
        doctest::Approx((2 * h - 1) / (8 * (4 * h - 1))).epsilon(1e-6));
  CHECK(diagram_scalar(Diagram(4, {{1, 3}, {2, 4}}), *m, 0, 1, cfg).value ==
        doctest::Approx(h / (4 * (4 * h - 1)) - h / 4 * cb).epsilon(1e-6));
}

TEST_CASE("level-4 fbm diagram values sum to 1/8 for every H") {
  QuadratureConfig cfg;
  for (double h : {0.3, 0.4, 0.6, 0.75}) {
    const auto m = make_model(fbm(h));
    double sum = 0.0;
    for (const auto& d : enumerate_pairings(4, 0)) sum += diagram_scalar(d, *m, 0, 1, cfg).value;
    CHECK(sum == doctest::Approx(0.125).epsilon(1e-6));
  }
}

// The pure nested-quadrature route integrates all retained variables
// numerically; it is slow on the 4-dim crossing diagram, so it runs at a
// loose tolerance and serves as a structural cross-check of the folding.
TEST_CASE("antiderivative folding agrees with pure nested quadrature") {
  for (const auto& spec : {fbm(0.75), fbm(0.35), kOu, kBridge}) {
    const auto m = make_model(spec);
    for (const auto& d : enumerate_pairings(4, 0)) {
      const double t = m->usable_horizon() >= 1.0 ? 1.0 : m->usable_horizon();
      const ValErr full = diagram_scalar(d, *m, 0, t, with_reduction(QuadratureConfig::Reduction::full));
      auto cfg_none = with_reduction(QuadratureConfig::Reduction::none);
      cfg_none.rel_tol = 1e-3;
      cfg_none.max_segments = 512;
      const ValErr none = diagram_scalar(d, *m, 0, t, cfg_none);
      CHECK(none.value ==
            doctest::Approx(full.value).epsilon(5e-3).scale(std::abs(full.value) + 1e-4));
      const ValErr tail = diagram_scalar(d, *m, 0, t, with_reduction(QuadratureConfig::Reduction::tail));
      CHECK(tail.value ==
            doctest::Approx(full.value).epsilon(1e-5).scale(std::abs(full.value) + 1e-9));
    }
  }
}

TEST_CASE("level-3 chaos kernels have the advertised closed forms") {
  const double h = 0.4;
  const auto m = make_model(fbm(h));
  QuadratureConfig cfg;
  const std::vector<int> word = {1, 1, 1};
  const double u = 0.5;
  const double times[] = {u};
  const int idx[] = {1};

  SUBCASE("leading consecutive pair: (R(s) + R(u))/2 - R(s,u) = u^{2H}/2") {
    ChaosKernel k(*m, Diagram(3, {{1, 2}}), word, 0.0, 1.0);
    CHECK(k.eval(times, idx, cfg).value == doctest::Approx(0.2871745887492587).epsilon(1e-12));
    CHECK(k.integration_count() == 1);
    CHECK(k.eliminated_positions() == std::vector<int>{1});
    CHECK(k.free_positions() == std::vector<int>{3});
  }
  SUBCASE("trailing consecutive pair: half the increment variance to t") {
    ChaosKernel k(*m, Diagram(3, {{2, 3}}), word, 0.0, 1.0);
    CHECK(k.eval(times, idx, cfg).value ==
          doctest::Approx(0.5 * std::pow(1.0 - u, 2 * h)).epsilon(1e-12));
  }
  SUBCASE("arc over the free point: increment covariance, checked by 2-d quadrature") {
    ChaosKernel k(*m, Diagram(3, {{1, 3}}), word, 0.0, 1.0);
    const double direct = m->inc_cov(0.0, u, u, 1.0);
    CHECK(k.eval(times, idx, cfg).value == doctest::Approx(direct).epsilon(1e-12));
    // Independent route: iterated quadrature of d12R over (0,u) x (u,1).
    auto outer = [&](double a) -> ValErr {
      auto inner = [&](double b) -> ValErr { return {m->cov_d12(a, b), 0.0}; };
      const auto q = adaptive_gk(inner, u, 1.0, 1e-9, 1e-13);
      return {q.value, q.err};
    };
    const auto q2 = adaptive_gk(outer, 0.0, u, 1e-9, 1e-13);
    CHECK(k.eval(times, idx, cfg).value == doctest::Approx(q2.value).epsilon(1e-6));
  }
}

TEST_CASE("kernel support and index constraints") {
  const auto m = make_model(fbm(0.4));
  QuadratureConfig cfg;
  ChaosKernel k(*m, Diagram(3, {{1, 2}}), {1, 1, 2}, 0.0, 1.0);
  const double inside[] = {0.5};
  const double outside[] = {1.5};
  const int match[] = {2};
  const int mismatch[] = {1};
  CHECK(k.eval(outside, match, cfg).value == 0.0);
  CHECK(k.eval(inside, mismatch, cfg).value == 0.0);
  CHECK(k.eval(inside, match, cfg).value != 0.0);

  // Unordered tuples lie outside the simplex.
  ChaosKernel k3(*m, Diagram(3, {}), {1, 1, 1}, 0.0, 1.0);
  const double bad_order[] = {0.7, 0.2, 0.9};
  const int ones[] = {1, 1, 1};
  CHECK(k3.eval(bad_order, ones, cfg).value == 0.0);
  const double good_order[] = {0.2, 0.5, 0.9};
  CHECK(k3.eval(good_order, ones, cfg).value == 1.0);
}

TEST_CASE("single-letter kernel is the interval indicator") {
  const auto m = make_model(kBm);
  QuadratureConfig cfg;
  const auto kernels = chaos_projection_kernels(*m, std::vector<int>{1}, 1, 0.0, 1.0);
  REQUIRE(kernels.size() == 1);
  const double t1[] = {0.4};
  const int i1[] = {1};
  CHECK(kernels[0].eval(t1, i1, cfg).value == 1.0);
}

TEST_CASE("chaos kernel family counts and parity") {
  const auto m = make_model(fbm(0.4));
  CHECK(chaos_projection_kernels(*m, std::vector<int>{1, 1, 1}, 2, 0, 1).empty());
  CHECK(chaos_projection_kernels(*m, std::vector<int>{1, 1, 1, 1}, 2, 0, 1).size() == 6);
  CHECK(chaos_projection_kernels(*m, std::vector<int>{1, 1}, 0, 0, 1).size() == 1);
}

TEST_CASE("expected signature of bm matches the exponential closed form") {
  const auto m = make_model(kBm);
  QuadratureConfig cfg;
  const auto res = expected_signature(*m, 2, 4, 0.0, 1.0, cfg);
  const int w11[] = {1, 1}, w22[] = {2, 2}, w12[] = {1, 2};
  const int w1111[] = {1, 1, 1, 1}, w1122[] = {1, 1, 2, 2}, w1212[] = {1, 2, 1, 2};
  CHECK(res.values.coeff(w11) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.values.coeff(w22) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.values.coeff(w12) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.values.coeff(w1111) == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(res.values.coeff(w1122) == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(res.values.coeff(w1212) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("expected signature fbm basics") {
  QuadratureConfig cfg;
  for (double h : {0.3, 0.75}) {
    const auto m = make_model(fbm(h));
    const auto res = expected_signature(*m, 2, 2, 0.0, 1.0, cfg);
    const int w11[] = {1, 1}, w12[] = {1, 2}, w21[] = {2, 1};
    CHECK(res.values.coeff(w11) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.values.coeff(w12) == 0.0);
    // Level-2 symmetry: the expected Levy area vanishes.
    CHECK(res.values.coeff(w12) == res.values.coeff(w21));
  }
  const auto m = make_model(fbm(0.75));
  const auto res = expected_signature(*m, 1, 4, 0.0, 1.0, cfg);
  const int w4[] = {1, 1, 1, 1};
  CHECK(res.values.coeff(w4) == doctest::Approx(0.125).epsilon(1e-6));
}

TEST_CASE("fbm(1/2) expected signature equals bm") {
  QuadratureConfig cfg;
  const auto a = expected_signature(*make_model(fbm(0.5)), 1, 4, 0.0, 1.0, cfg);
  const auto b = expected_signature(*make_model(kBm), 1, 4, 0.0, 1.0, cfg);
  for (int n = 0; n <= 4; ++n) {
    auto va = a.values.level_coeffs(n);
    auto vb = b.values.level_coeffs(n);
    for (std::size_t i = 0; i < va.size(); ++i)
      CHECK(va[i] == doctest::Approx(vb[i]).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("chen identity in expectation for bm") {
  QuadratureConfig cfg;
  const auto m = make_model(kBm);
  const auto whole = expected_signature(*m, 2, 4, 0.0, 1.0, cfg);
  const auto left = expected_signature(*m, 2, 4, 0.0, 0.4, cfg);
  const auto right = expected_signature(*m, 2, 4, 0.4, 1.0, cfg);
  const auto prod = chen_product(left.values, right.values);
  for (int n = 0; n <= 4; ++n) {
    auto vw = whole.values.level_coeffs(n);
    auto vp = prod.level_coeffs(n);
    for (std::size_t i = 0; i < vw.size(); ++i)
      CHECK(vp[i] == doctest::Approx(vw[i]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("fbm scaling of diagram values") {
  const double h = 0.4;
  const auto m = make_model(fbm(h));
  QuadratureConfig cfg;
  const Diagram d(4, {{1, 3}, {2, 4}});
  const double full = diagram_scalar(d, *m, 0, 1, cfg).value;
  const double half = diagram_scalar(d, *m, 0, 0.5, cfg).value;
  CHECK(half / full == doctest::Approx(std::pow(0.5, 4 * h)).epsilon(1e-5));
}

TEST_CASE("zero-length interval gives the identity") {
  QuadratureConfig cfg;
  const auto m = make_model(fbm(0.3));
  const auto res = expected_signature(*m, 2, 4, 0.3, 0.3, cfg);
  CHECK(res.values == TensorPolynomial::identity(2, 4));
}

TEST_CASE("quasi-Monte Carlo fallback approximates a smooth diagram value") {
  const auto m = make_model(kBridge);
  const Diagram d(4, {{1, 2}, {3, 4}});
  QuadratureConfig det;
  const double reference = diagram_scalar(d, *m, 0, 1, det).value;

  QuadratureConfig qmc;
  qmc.reduction = QuadratureConfig::Reduction::none;
  qmc.max_det_dims = 1;
  qmc.mc_fallback_samples = 200000;
  qmc.rng_seed = 4242;
  const ValErr est = diagram_scalar(d, *m, 0, 1, qmc);
  CHECK(std::abs(est.value - reference) <= std::max(4 * est.err, 2e-4));
}

// At level 6 the folding routes differ per pairing (left- and right-arc
// integrations, chained consecutive pairs); the all-ones coefficient over
// [0,1] must still sum to E[X_1^6]/6! = 15/720 for every H.
TEST_CASE("level-6 all-ones coefficient is 15/720 for every H") {
  QuadratureConfig cfg;
  for (double h : {0.35, 0.75}) {
    const auto m = make_model(fbm(h));
    double sum = 0.0, err = 0.0;
    for (const auto& d : enumerate_pairings(6, 0)) {
      const ValErr r = diagram_scalar(d, *m, 0, 1, cfg);
      sum += r.value;
      err += r.err;
    }
    CHECK(sum == doctest::Approx(15.0 / 720.0).epsilon(2e-5));
    CHECK(err < 1e-4);
  }
}

TEST_CASE("full folding agrees with tail folding on level-6 arc diagrams") {
  QuadratureConfig full;
  QuadratureConfig tail = with_reduction(QuadratureConfig::Reduction::tail);
  tail.rel_tol = 1e-5;
  for (double h : {0.35, 0.75}) {
    const auto m = make_model(fbm(h));
    for (const auto& pairs : std::vector<std::vector<std::pair<int, int>>>{
             {{1, 3}, {2, 5}, {4, 6}}, {{1, 4}, {2, 5}, {3, 6}}, {{1, 5}, {2, 6}, {3, 4}}}) {
      const Diagram d(6, pairs);
      const ValErr a = diagram_scalar(d, *m, 0, 1, full);
      const ValErr b = diagram_scalar(d, *m, 0, 1, tail);
      CHECK(std::isfinite(a.value));
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-3).scale(std::abs(b.value) + 1e-6));
    }
  }
}

TEST_CASE("worker count does not change results") {
  QuadratureConfig cfg;
  const auto m = make_model(fbm(0.35));
  setenv("ESIG_THREADS", "2", 1);
  const auto par = expected_signature(*m, 2, 4, 0.0, 1.0, cfg);
  setenv("ESIG_THREADS", "1", 1);
  const auto ser = expected_signature(*m, 2, 4, 0.0, 1.0, cfg);
  unsetenv("ESIG_THREADS");
  CHECK(par.values == ser.values);  // bit-stable: fixed diagram order
}

TEST_CASE("capability and interval validation") {
  QuadratureConfig cfg;
  const auto m = make_model(fbm(0.4));
  CHECK_THROWS_AS(expected_signature(*m, 5, 2, 0, 1, cfg), CapabilityError);
  CHECK_THROWS_AS(expected_signature(*m, 2, 7, 0, 1, cfg), CapabilityError);
  CHECK_THROWS_AS(expected_signature(*m, 2, 2, 0, 1.5, cfg), std::invalid_argument);
  const auto bridge = make_model({ModelKind::bridge, 0.5, 1.0, 1.0, 1.0, 0.0});
  CHECK_THROWS_AS(expected_signature(*bridge, 1, 2, 0.0, 1.0, cfg), std::invalid_argument);
}
