#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "esig/covariance.hpp"
#include "esig/diagrams.hpp"

namespace esig {

/// Uniform mesh of [s, t] with ell cells; cell k is [s + k rho, s + (k+1) rho).
struct UniformGrid {
  double s = 0.0;
  double t = 1.0;
  int ell = 1;

  UniformGrid() = default;
  UniformGrid(double s, double t, int ell);

  double rho() const { return (t - s) / ell; }
  double cell_lo(int k) const { return s + k * rho(); }
  double cell_hi(int k) const { return s + (k + 1) * rho(); }
  /// Cell containing v (clamped to 0..ell-1 at the right endpoint).
  int cell_of(double v) const;
};

/// Gram matrix of the cell increments, G[i][j] = E[X_{cell i} X_{cell j}].
class IncrementGram {
 public:
  IncrementGram(const CovarianceModel& model, const UniformGrid& grid);

  const UniformGrid& grid() const { return grid_; }
  double at(int i, int j) const { return g_[static_cast<std::size_t>(i) * ell_ + j]; }
  int size() const { return static_cast<int>(ell_); }
  std::span<const double> data() const { return g_; }

 private:
  UniformGrid grid_;
  std::size_t ell_;
  std::vector<double> g_;
};

/// In-place Cholesky with a pivot tolerance: returns the index of the first
/// pivot below -tol * max_diag (negative curvature) or -1 when the matrix is
/// positive semidefinite; rows with near-zero pivots are zeroed.
int cholesky_psd(std::vector<double>& a, int n, double tol);

/// Mixed moment E[Z_1 ... Z_n] of centred jointly Gaussian variables with
/// covariance matrix cov (row-major n x n): sum over full pairings of
/// products of covariances. 1 for n = 0, 0 for odd n.
double wick_moment(std::span<const double> cov, int n);

inline constexpr long long kDefaultOracleBudget = 100000000;  // assignment terms

/// Exact expected signature coefficient of the piecewise-linear interpolation
/// of the model on the grid: sum over weakly increasing cell assignments of
/// the ordered-overlap volume factor (1/r! per equal-cell run) times the Wick
/// moment of the assigned increments with the word's component letters.
/// Throws CapabilityError when the assignment count exceeds the budget.
double pl_expected_signature(const CovarianceModel& model, const UniformGrid& grid,
                             std::span<const int> word,
                             long long budget = kDefaultOracleBudget);

/// Variant taking a prebuilt Gram (reused across words and diagrams).
double pl_expected_signature(const IncrementGram& gram, std::span<const int> word,
                             long long budget = kDefaultOracleBudget);

/// Exact discrete analogue of the pairing kernel: free positions are pinned to
/// the cells containing the free times (which must lie strictly inside cells),
/// paired positions are summed over cells, and each assignment carries the
/// ordered-overlap volume factor and its product of Gram entries.
double pl_chaos_kernel(const Diagram& diagram, const IncrementGram& gram,
                       std::span<const int> word, std::span<const double> free_times,
                       std::span<const int> free_indices,
                       long long budget = kDefaultOracleBudget);

/// An elementary grid kernel: a finite combination of (cell, component)
/// indicator functions.
struct GridKernel {
  struct Term {
    int cell = 0;
    int component = 1;
    double coeff = 1.0;
  };
  std::vector<Term> terms;
};

/// Grid-level inner product of elementary kernels: sum of coefficient pairs
/// times delta(components) times the increment covariance of the cells.
double grid_inner_product(const GridKernel& f, const GridKernel& g, const IncrementGram& gram);

}  // namespace esig
