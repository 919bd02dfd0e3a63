#include "esig/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "esig/errors.hpp"
#include "esig/rng.hpp"

namespace esig {

PathSampler::PathSampler(const CovarianceModel& model, const UniformGrid& grid, int dim,
                         std::uint64_t seed)
    : grid_(grid), dim_(dim), seed_(seed) {
  if (dim < 1) throw std::invalid_argument("PathSampler: dimension must be positive");
  if (grid.t > model.usable_horizon() * (1.0 + 1e-12))
    throw std::invalid_argument("PathSampler: grid extends beyond the usable horizon");
  IncrementGram gram(model, grid);
  chol_.assign(gram.data().begin(), gram.data().end());
  const int bad = cholesky_psd(chol_, grid.ell, 1e-10);
  if (bad >= 0)
    throw std::runtime_error("PathSampler: increment Gram factorisation failed at pivot " +
                             std::to_string(bad));
}

PathSample PathSampler::sample(long path_index) const {
  const int ell = grid_.ell;
  PathSample out;
  out.grid = grid_;
  out.dim = dim_;
  out.master_seed = seed_;
  out.index = path_index;
  out.values.assign(static_cast<std::size_t>(ell + 1) * dim_, 0.0);

  SplitMix64 rng(SplitMix64::mix(seed_, static_cast<std::uint64_t>(path_index)));
  std::vector<double> z(static_cast<std::size_t>(ell));
  for (int c = 0; c < dim_; ++c) {
    for (int k = 0; k < ell; ++k) z[static_cast<std::size_t>(k)] = rng.normal();
    // increments = L z, path = running sum, starting at 0
    double run = 0.0;
    for (int k = 0; k < ell; ++k) {
      double inc = 0.0;
      const double* row = chol_.data() + static_cast<std::size_t>(k) * ell;
      for (int j = 0; j <= k; ++j) inc += row[j] * z[static_cast<std::size_t>(j)];
      run += inc;
      out.values[static_cast<std::size_t>(k + 1) * dim_ + c] = run;
    }
  }
  return out;
}

TensorPolynomial pathwise_signature(const PathSample& path, int level) {
  const int d = path.dim;
  TensorPolynomial acc = TensorPolynomial::identity(d, level);
  std::vector<double> inc(static_cast<std::size_t>(d));
  for (int k = 0; k < path.grid.ell; ++k) {
    for (int c = 0; c < d; ++c)
      inc[static_cast<std::size_t>(c)] =
          path.values[static_cast<std::size_t>(k + 1) * d + c] -
          path.values[static_cast<std::size_t>(k) * d + c];
    acc = chen_product(acc, tensor_exp(inc, level));
  }
  return acc;
}

McEstimate estimate_expected_signature(const CovarianceModel& model, const UniformGrid& grid,
                                       int dim, int level, long n_paths, std::uint64_t seed) {
  if (n_paths < 2) throw std::invalid_argument("estimate_expected_signature: need >= 2 paths");
  PathSampler sampler(model, grid, dim, seed);

  McEstimate est{TensorPolynomial(dim, level), TensorPolynomial(dim, level), n_paths, seed};
  TensorPolynomial m2(dim, level);
  for (long i = 0; i < n_paths; ++i) {
    const TensorPolynomial sig = pathwise_signature(sampler.sample(i), level);
    const double inv = 1.0 / static_cast<double>(i + 1);
    for (int n = 0; n <= level; ++n) {
      auto mean = est.mean.level_coeffs(n);
      auto acc2 = m2.level_coeffs(n);
      auto x = sig.level_coeffs(n);
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double delta = x[j] - mean[j];
        mean[j] += delta * inv;
        acc2[j] += delta * (x[j] - mean[j]);
      }
    }
  }
  for (int n = 0; n <= level; ++n) {
    auto se = est.std_error.level_coeffs(n);
    auto acc2 = m2.level_coeffs(n);
    for (std::size_t j = 0; j < se.size(); ++j)
      se[j] = std::sqrt(acc2[j] / static_cast<double>(n_paths - 1) /
                        static_cast<double>(n_paths));
  }
  return est;
}

}  // namespace esig
