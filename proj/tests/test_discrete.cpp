#include <doctest.h>

#include <cmath>

#include "esig/discrete.hpp"
#include "esig/errors.hpp"
#include "esig/rng.hpp"

using namespace esig;

namespace {

ModelSpec fbm(double h) {
  ModelSpec s;
  s.kind = ModelKind::fbm;
  s.hurst = h;
  s.horizon = 1.0;
  return s;
}

const ModelSpec kBm{ModelKind::bm, 0.5, 1.0, 1.0, 1.0, 0.0};

}  // namespace

TEST_CASE("grid cells") {
  const UniformGrid g(0.0, 1.0, 8);
  CHECK(g.rho() == doctest::Approx(0.125));
  CHECK(g.cell_of(0.0) == 0);
  CHECK(g.cell_of(0.124) == 0);
  CHECK(g.cell_of(0.125) == 1);
  CHECK(g.cell_of(1.0) == 7);  // right endpoint clamps into the last cell
}

TEST_CASE("wick moment basics") {
  const double c2[] = {1.0, 0.3, 0.3, 1.0};
  CHECK(wick_moment(std::span<const double>(c2, 4), 2) == doctest::Approx(0.3));

  std::vector<double> ones(16, 1.0);
  CHECK(wick_moment(ones, 4) == doctest::Approx(3.0));  // E Z^4 = 3

  std::vector<double> odd(9, 1.0);
  CHECK(wick_moment(odd, 3) == 0.0);
  CHECK(wick_moment({}, 0) == 1.0);
}

TEST_CASE("wick moment n=4 general expansion") {
  SplitMix64 rng(1);
  std::vector<double> m(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = rng.uniform() - 0.5;
      m[static_cast<std::size_t>(i) * 4 + j] = v;
      m[static_cast<std::size_t>(j) * 4 + i] = v;
    }
  const double expect = m[0 * 4 + 1] * m[2 * 4 + 3] + m[0 * 4 + 2] * m[1 * 4 + 3] +
                        m[0 * 4 + 3] * m[1 * 4 + 2];
  CHECK(wick_moment(m, 4) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("pl level-2 value is exactly 1/2 when grid endpoints are 0 and 1") {
  const std::vector<int> w11 = {1, 1};
  for (const auto& spec : {fbm(0.3), fbm(0.75), kBm}) {
    const auto m = make_model(spec);
    for (int ell : {1, 5, 16}) {
      const UniformGrid g(0.0, 1.0, ell);
      CHECK(pl_expected_signature(*m, g, w11) == doctest::Approx(0.5).epsilon(1e-13));
    }
  }
}

TEST_CASE("pl values vanish for odd words") {
  const auto m = make_model(fbm(0.4));
  CHECK(pl_expected_signature(*m, UniformGrid(0, 1, 4), std::vector<int>{1}) == 0.0);
  CHECK(pl_expected_signature(*m, UniformGrid(0, 1, 4), std::vector<int>{1, 1, 1}) == 0.0);
}

TEST_CASE("pl is grid-independent for bm (martingale telescoping)") {
  const auto m = make_model(kBm);
  const std::vector<int> w4 = {1, 1, 1, 1};
  const double v2 = pl_expected_signature(*m, UniformGrid(0, 1, 2), w4);
  const double v4 = pl_expected_signature(*m, UniformGrid(0, 1, 4), w4);
  const double v8 = pl_expected_signature(*m, UniformGrid(0, 1, 8), w4);
  CHECK(v2 == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(std::abs(v2 - v4) <= 1e-12);
  CHECK(std::abs(v4 - v8) <= 1e-12);
}

TEST_CASE("pl cross-letter words need matching pairs") {
  const auto m = make_model(fbm(0.4));
  // (1,2): no pairing can match both letters, so the value is 0.
  CHECK(pl_expected_signature(*m, UniformGrid(0, 1, 6), std::vector<int>{1, 2}) == 0.0);
}

TEST_CASE("budget guard") {
  const auto m = make_model(fbm(0.4));
  CHECK_THROWS_AS(
      pl_expected_signature(*m, UniformGrid(0, 1, 64), std::vector<int>{1, 1, 1, 1}, 1000),
      CapabilityError);
}

TEST_CASE("pl kernel of the empty pairing is the simplex indicator") {
  const auto m = make_model(fbm(0.4));
  const IncrementGram gram(*m, UniformGrid(0, 1, 16));
  const Diagram d(3, {});
  const std::vector<int> w = {1, 1, 1};
  const int idx[] = {1, 1, 1};
  const double ordered[] = {0.15, 0.43, 0.81};
  CHECK(pl_chaos_kernel(d, gram, w, ordered, idx) == doctest::Approx(1.0));
  const double unordered[] = {0.43, 0.15, 0.81};
  CHECK(pl_chaos_kernel(d, gram, w, unordered, idx) == 0.0);
}

TEST_CASE("pl kernel rejects boundary free times") {
  const auto m = make_model(fbm(0.4));
  const IncrementGram gram(*m, UniformGrid(0, 1, 8));
  const Diagram d(3, {});
  const std::vector<int> w = {1, 1, 1};
  const int idx[] = {1, 1, 1};
  const double on_boundary[] = {0.125, 0.4, 0.7};
  CHECK_THROWS_AS(pl_chaos_kernel(d, gram, w, on_boundary, idx), std::invalid_argument);
}

TEST_CASE("pl kernel degenerate m = 0 equals the pl expected signature term") {
  // For n = 2 the only pairing is {1,2}, so the kernel value with no free
  // arguments must equal the full level-2 pl expectation.
  for (const auto& spec : {fbm(0.35), kBm}) {
    const auto m = make_model(spec);
    const IncrementGram gram(*m, UniformGrid(0, 1, 12));
    const Diagram d(2, {{1, 2}});
    const std::vector<int> w = {1, 1};
    CHECK(pl_chaos_kernel(d, gram, w, {}, {}) ==
          doctest::Approx(pl_expected_signature(*m, gram.grid(), w)).epsilon(1e-13));
  }
}

TEST_CASE("pl arc kernel for bm shrinks like the cell width") {
  // inc_cov vanishes for bm across distinct cells; the only surviving
  // assignment packs all three positions into the free cell, of weight rho/6.
  const auto m = make_model(kBm);
  const Diagram d(3, {{1, 3}});
  const std::vector<int> w = {1, 1, 1};
  const int idx[] = {1};
  double prev = 1.0;
  for (int ell : {8, 16, 32}) {
    const IncrementGram gram(*m, UniformGrid(0, 1, ell));
    const double times[] = {0.4142135624};
    const double v = pl_chaos_kernel(d, gram, w, times, idx);
    CHECK(v == doctest::Approx(1.0 / (6.0 * ell)).epsilon(1e-12));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("pl kernel respects index constraints") {
  const auto m = make_model(fbm(0.4));
  const IncrementGram gram(*m, UniformGrid(0, 1, 8));
  const Diagram d(3, {{1, 2}});
  const std::vector<int> w = {1, 1, 2};
  const int good[] = {2};
  const int bad[] = {1};
  const double times[] = {0.55};
  CHECK(pl_chaos_kernel(d, gram, w, times, good) != 0.0);
  CHECK(pl_chaos_kernel(d, gram, w, times, bad) == 0.0);
  const std::vector<int> mismatched_pair = {1, 2, 1};
  CHECK(pl_chaos_kernel(d, gram, mismatched_pair, times, good) == 0.0);
}

TEST_CASE("grid inner product reproduces the covariance on grid points") {
  for (const auto& spec : {fbm(0.3), fbm(0.7), kBm}) {
    const auto m = make_model(spec);
    const UniformGrid g(0.0, 1.0, 8);
    const IncrementGram gram(*m, g);
    auto indicator_to = [&](int cells, int component) {
      GridKernel k;
      for (int c = 0; c < cells; ++c) k.terms.push_back({c, component, 1.0});
      return k;
    };
    // <1_{[0,s)}, 1_{[0,t)}> = R(s,t) for grid-aligned s, t.
    const auto f = indicator_to(2, 1);  // s = 0.25
    const auto g2 = indicator_to(6, 1);  // t = 0.75
    CHECK(grid_inner_product(f, g2, gram) == doctest::Approx(m->cov(0.25, 0.75)).epsilon(1e-12));
    // Distinct components are orthogonal.
    CHECK(grid_inner_product(indicator_to(3, 1), indicator_to(5, 2), gram) == 0.0);
  }
}

TEST_CASE("grid inner product satisfies Cauchy-Schwarz on random kernels") {
  const auto m = make_model(fbm(0.35));
  const IncrementGram gram(*m, UniformGrid(0, 1, 8));
  SplitMix64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    GridKernel f, g;
    for (int c = 0; c < 8; ++c) {
      f.terms.push_back({c, 1, rng.uniform() - 0.5});
      g.terms.push_back({c, 1, rng.uniform() - 0.5});
    }
    const double fg = grid_inner_product(f, g, gram);
    const double ff = grid_inner_product(f, f, gram);
    const double gg = grid_inner_product(g, g, gram);
    CHECK(ff >= -1e-12);
    CHECK(gg >= -1e-12);
    CHECK(fg * fg <= ff * gg * (1.0 + 1e-10) + 1e-14);
  }
}

TEST_CASE("increment Gram matrices are positive semidefinite") {
  for (const auto& spec : {fbm(0.3), fbm(0.75), kBm}) {
    const auto m = make_model(spec);
    IncrementGram gram(*m, UniformGrid(0.0, 1.0, 32));
    std::vector<double> a(gram.data().begin(), gram.data().end());
    CHECK(cholesky_psd(a, 32, 1e-10) == -1);
  }
}
