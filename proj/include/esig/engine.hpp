#pragma once

#include <span>
#include <vector>

#include "esig/covariance.hpp"
#include "esig/diagrams.hpp"
#include "esig/quadrature.hpp"
#include "esig/words.hpp"

namespace esig {

/// Desk-scale ceilings for the analytic engine.
inline constexpr int kMaxSignatureLevel = 6;
inline constexpr int kMaxDimension = 4;

/// The simplex integral attached to one pairing of the positions 1..n over
/// [s, t]: a function of the free (single-position) times and indices,
/// obtained by integrating, over the variables that remain after dropping the
/// first member of every consecutive pair, the product of
///   d12 R(u_i, u_j)                    for each arc {i, j},
///   R'(u_{h+1})/2 - d2 R(u_{h-1}, u_{h+1})  for each consecutive pair,
/// with u_0 = s anchoring a leading consecutive pair, subject to the ordering
/// inherited from s < u_1 < ... < u_n < t. Outside the ordered simplex (or on
/// an index mismatch) the kernel is 0. The referenced model must outlive the
/// kernel.
class ChaosKernel {
 public:
  ChaosKernel(const CovarianceModel& model, Diagram diagram, std::vector<int> word,
              double s, double t);

  const Diagram& diagram() const { return diagram_; }
  const std::vector<int>& word() const { return word_; }
  const std::vector<int>& free_positions() const { return free_positions_; }
  const std::vector<int>& eliminated_positions() const { return eliminated_; }
  /// Number of integration variables of the defining integral
  /// (2 * #arcs + #consecutive pairs).
  int integration_count() const { return diagram_.integration_count(); }
  double s() const { return s_; }
  double t() const { return t_; }
  int chaos_order() const { return static_cast<int>(free_positions_.size()); }

  /// Evaluate at the given free times and component indices.
  ValErr eval(std::span<const double> free_times, std::span<const int> free_indices,
              const QuadratureConfig& cfg) const;

 private:
  const CovarianceModel* model_;
  Diagram diagram_;
  std::vector<int> word_;
  double s_, t_;
  std::vector<int> free_positions_;
  std::vector<int> eliminated_;
  std::vector<int> retained_;
};

/// Value of the pairing integral for a diagram without singles (the chaos
/// order 0 case, a plain number). Throws QuadratureError when the requested
/// tolerance cannot be certified.
ValErr diagram_scalar(const Diagram& diagram, const CovarianceModel& model, double s, double t,
                      const QuadratureConfig& cfg);

struct TermResult {
  Diagram diagram;
  double value = 0.0;
  double err = 0.0;
  bool stochastic = false;  // true when the quasi-Monte Carlo fallback ran
};

struct SignatureResult {
  TensorPolynomial values;
  TensorPolynomial errors;              // per-word accumulated error bounds
  std::vector<std::vector<TermResult>> terms_by_level;  // index = level
};

/// Expected signature up to level N over [s, t] in dimension d: the level-n
/// coefficient of a word is the sum of the scalars of all index-compatible
/// pairings without singles; odd levels vanish. Each diagram integral is
/// computed once and reused across words. Worker count is capped by the
/// ESIG_THREADS environment variable (diagram order is fixed, so results do
/// not depend on it).
SignatureResult expected_signature(const CovarianceModel& model, int dim, int level, double s,
                                   double t, const QuadratureConfig& cfg);

/// The chaos-order-m kernel family of a signature coefficient: one kernel per
/// pairing with m singles. Empty (not an error) on a parity mismatch. The
/// m-fold Wiener integral is represented symbolically by the kernels.
std::vector<ChaosKernel> chaos_projection_kernels(const CovarianceModel& model,
                                                  std::span<const int> word, int m, double s,
                                                  double t);

}  // namespace esig
