#include "esig/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "esig/errors.hpp"

namespace esig {

UniformGrid::UniformGrid(double s_in, double t_in, int ell_in) : s(s_in), t(t_in), ell(ell_in) {
  if (!(t > s)) throw std::invalid_argument("UniformGrid: need s < t");
  if (ell < 1) throw std::invalid_argument("UniformGrid: need at least one cell");
}

int UniformGrid::cell_of(double v) const {
  const int k = static_cast<int>(std::floor((v - s) / rho()));
  return std::clamp(k, 0, ell - 1);
}

IncrementGram::IncrementGram(const CovarianceModel& model, const UniformGrid& grid)
    : grid_(grid), ell_(static_cast<std::size_t>(grid.ell)) {
  g_.resize(ell_ * ell_);
  for (int i = 0; i < grid.ell; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = model.inc_cov(grid.cell_lo(i), grid.cell_hi(i), grid.cell_lo(j),
                                     grid.cell_hi(j));
      g_[static_cast<std::size_t>(i) * ell_ + static_cast<std::size_t>(j)] = v;
      g_[static_cast<std::size_t>(j) * ell_ + static_cast<std::size_t>(i)] = v;
    }
}

int cholesky_psd(std::vector<double>& a, int n, double tol) {
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i)
    max_diag = std::max(max_diag, std::abs(a[static_cast<std::size_t>(i) * n + i]));
  const double cut = tol * std::max(max_diag, 1e-300);
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (d < -cut) return j;
    if (d <= cut) {
      // Semidefinite direction: zero the column.
      for (int i = j; i < n; ++i) a[static_cast<std::size_t>(i) * n + j] = 0.0;
      continue;
    }
    const double root = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = root;
    for (int i = j + 1; i < n; ++i) {
      double v = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        v -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
      a[static_cast<std::size_t>(i) * n + j] = v / root;
    }
  }
  // Zero the strict upper triangle so the result is the factor itself.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = 0.0;
  return -1;
}

namespace {

double wick_rec(std::span<const double> cov, int n, unsigned used) {
  int a = 0;
  while (a < n && (used & (1u << a))) ++a;
  if (a == n) return 1.0;
  used |= 1u << a;
  double sum = 0.0;
  for (int b = a + 1; b < n; ++b) {
    if (used & (1u << b)) continue;
    const double c = cov[static_cast<std::size_t>(a) * n + b];
    if (c == 0.0) continue;
    sum += c * wick_rec(cov, n, used | (1u << b));
  }
  return sum;
}

}  // namespace

double wick_moment(std::span<const double> cov, int n) {
  if (n == 0) return 1.0;
  if (n % 2 != 0) return 0.0;
  if (n == 2) return cov[1];
  if (static_cast<std::size_t>(n) * n != cov.size())
    throw std::invalid_argument("wick_moment: covariance must be n x n");
  if (n > 24) throw CapabilityError("wick_moment: n too large");
  return wick_rec(cov, n, 0u);
}

namespace {

long long weakly_increasing_count(int ell, int n) {
  // binomial(ell + n - 1, n)
  long long c = 1;
  for (int i = 1; i <= n; ++i) {
    c = c * (ell + n - i) / i;
    if (c < 0) return std::numeric_limits<long long>::max();
  }
  return c;
}

// Enumerates weakly increasing cell assignments; positions with pinned cells
// (free positions of a kernel) are fixed. The per-assignment weight is the
// ordered-overlap volume factor, prod over equal-cell runs of 1/r!.
struct AssignmentSum {
  int n = 0;
  int ell = 0;
  const int* pinned = nullptr;  // -1 when unpinned
  long long budget = 0;
  long long visited = 0;
  std::vector<int> cells;

  template <class Leaf>
  double run(Leaf&& leaf) {
    cells.assign(static_cast<std::size_t>(n), 0);
    double total = 0.0;
    rec(0, 0, 1, 1.0, leaf, total);
    return total;
  }

  template <class Leaf>
  void rec(int pos, int min_cell, int run_len, double factor, Leaf&& leaf, double& total) {
    if (pos == n) {
      if (++visited > budget)
        throw CapabilityError("discrete oracle: assignment budget exceeded (" +
                              std::to_string(budget) + " terms)");
      total += factor * leaf(cells);
      return;
    }
    const int pin = pinned ? pinned[pos] : -1;
    const int prev = pos > 0 ? cells[static_cast<std::size_t>(pos - 1)] : -1;
    int from = std::max(min_cell, pin < 0 ? min_cell : pin);
    int to = pin < 0 ? ell - 1 : pin;
    // Never step past a later pinned cell.
    for (int q = pos + 1; pinned && q < n; ++q)
      if (pinned[q] >= 0) {
        to = std::min(to, pinned[q]);
        break;
      }
    for (int k = from; k <= to; ++k) {
      cells[static_cast<std::size_t>(pos)] = k;
      const int rl = (pos > 0 && k == prev) ? run_len + 1 : 1;
      rec(pos + 1, k, rl, factor / rl, leaf, total);
    }
  }
};

}  // namespace

double pl_expected_signature(const IncrementGram& gram, std::span<const int> word,
                             long long budget) {
  const int n = static_cast<int>(word.size());
  if (n == 0) return 1.0;
  if (n % 2 != 0) return 0.0;
  const int ell = gram.size();
  if (weakly_increasing_count(ell, n) > budget)
    throw CapabilityError("pl_expected_signature: " +
                          std::to_string(weakly_increasing_count(ell, n)) +
                          " assignments exceed budget " + std::to_string(budget));

  AssignmentSum sum;
  sum.n = n;
  sum.ell = ell;
  sum.budget = budget;

  std::vector<double> cov(static_cast<std::size_t>(n) * n, 0.0);
  auto leaf = [&](const std::vector<int>& cells) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double v = word[static_cast<std::size_t>(a)] == word[static_cast<std::size_t>(b)]
                             ? gram.at(cells[static_cast<std::size_t>(a)],
                                       cells[static_cast<std::size_t>(b)])
                             : 0.0;
        cov[static_cast<std::size_t>(a) * n + b] = v;
        cov[static_cast<std::size_t>(b) * n + a] = v;
      }
    return wick_moment(cov, n);
  };
  return sum.run(leaf);
}

double pl_expected_signature(const CovarianceModel& model, const UniformGrid& grid,
                             std::span<const int> word, long long budget) {
  return pl_expected_signature(IncrementGram(model, grid), word, budget);
}

double pl_chaos_kernel(const Diagram& diagram, const IncrementGram& gram,
                       std::span<const int> word, std::span<const double> free_times,
                       std::span<const int> free_indices, long long budget) {
  const int n = diagram.n;
  if (static_cast<int>(word.size()) != n)
    throw std::invalid_argument("pl_chaos_kernel: word length must equal diagram size");
  const std::vector<int> singles = diagram.singles();
  if (free_times.size() != singles.size() || free_indices.size() != singles.size())
    throw std::invalid_argument("pl_chaos_kernel: expected " + std::to_string(singles.size()) +
                                " free times and indices");
  // Paired letters must match for a nonzero value.
  for (const auto& pr : diagram.pairs)
    if (word[static_cast<std::size_t>(pr.first - 1)] !=
        word[static_cast<std::size_t>(pr.second - 1)])
      return 0.0;
  for (std::size_t k = 0; k < singles.size(); ++k)
    if (free_indices[k] != word[static_cast<std::size_t>(singles[k] - 1)]) return 0.0;

  const UniformGrid& grid = gram.grid();
  std::vector<int> pinned(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < singles.size(); ++k) {
    const double v = free_times[k];
    if (!(v > grid.s && v < grid.t))
      throw std::invalid_argument("pl_chaos_kernel: free time outside the grid interval");
    const int cell = grid.cell_of(v);
    const double off = (v - grid.cell_lo(cell)) / grid.rho();
    if (off < 1e-9 || off > 1.0 - 1e-9)
      throw std::invalid_argument("pl_chaos_kernel: free time on a cell boundary");
    pinned[static_cast<std::size_t>(singles[k] - 1)] = cell;
  }

  AssignmentSum sum;
  sum.n = n;
  sum.ell = gram.size();
  sum.pinned = pinned.data();
  sum.budget = budget;

  auto leaf = [&](const std::vector<int>& cells) {
    double prod = 1.0;
    for (const auto& pr : diagram.pairs)
      prod *= gram.at(cells[static_cast<std::size_t>(pr.first - 1)],
                      cells[static_cast<std::size_t>(pr.second - 1)]);
    return prod;
  };
  return sum.run(leaf);
}

double grid_inner_product(const GridKernel& f, const GridKernel& g, const IncrementGram& gram) {
  double total = 0.0;
  for (const auto& a : f.terms)
    for (const auto& b : g.terms) {
      if (a.component != b.component) continue;
      total += a.coeff * b.coeff * gram.at(a.cell, b.cell);
    }
  return total;
}

}  // namespace esig
