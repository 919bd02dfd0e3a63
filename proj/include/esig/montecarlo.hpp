#pragma once

#include <cstdint>
#include <vector>

#include "esig/covariance.hpp"
#include "esig/discrete.hpp"
#include "esig/words.hpp"

namespace esig {

/// One sampled path on a grid: values[k * dim + c] is component c+1 of the
/// path at grid point k, with values at point 0 equal to 0.
struct PathSample {
  UniformGrid grid;
  int dim = 1;
  std::vector<double> values;  // (ell + 1) x dim, row-major
  std::uint64_t master_seed = 0;
  long index = 0;

  double value(int point, int component) const {
    return values[static_cast<std::size_t>(point) * dim + (component - 1)];
  }
};

/// Exact-law Gaussian path sampler: the increment Gram matrix is factorised
/// once (dense Cholesky) and each path draws i.i.d. normals through it, one
/// independent stream per component. Streams are counter-based on the path
/// index, so samples are reproducible independent of scheduling.
class PathSampler {
 public:
  PathSampler(const CovarianceModel& model, const UniformGrid& grid, int dim,
              std::uint64_t seed);

  PathSample sample(long path_index) const;

  const UniformGrid& grid() const { return grid_; }
  int dim() const { return dim_; }

 private:
  UniformGrid grid_;
  int dim_;
  std::uint64_t seed_;
  std::vector<double> chol_;  // lower-triangular factor of the increment Gram
};

/// Signature of the piecewise-linear path through the sample points: ordered
/// concatenation product of the segment exponentials.
TensorPolynomial pathwise_signature(const PathSample& path, int level);

/// Per-word sample mean and standard error of the pathwise signature.
struct McEstimate {
  TensorPolynomial mean;
  TensorPolynomial std_error;  // sample std / sqrt(n_paths)
  long n_paths = 0;
  std::uint64_t seed = 0;
};

/// Streaming Monte Carlo estimate of the expected signature of the
/// piecewise-linear interpolation on the given grid.
McEstimate estimate_expected_signature(const CovarianceModel& model, const UniformGrid& grid,
                                       int dim, int level, long n_paths, std::uint64_t seed);

}  // namespace esig
