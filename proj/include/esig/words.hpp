#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace esig {

/// A word: a finite sequence of component letters, each in 1..dim. Words of
/// length n index the coefficients of tensor level n.
struct Word {
  std::vector<int> letters;
  int dim = 1;

  Word() = default;
  Word(std::vector<int> letters, int dim);

  int length() const { return static_cast<int>(letters.size()); }
};

/// Lexicographic index of a word within its level (letters are 1-based).
std::size_t word_index(std::span<const int> letters, int dim);

/// Inverse of word_index.
std::vector<int> word_from_index(std::size_t index, int dim, int length);

/// All interleavings of w1 and w2 that preserve the internal order of each,
/// with multiplicity (the result is a multiset listed element by element;
/// size is binomial(|w1|+|w2|, |w1|)).
std::vector<std::vector<int>> shuffle(std::span<const int> w1, std::span<const int> w2);

/// Element of the tensor series truncated at level N over dimension d:
/// one real coefficient per word of length <= N, stored densely per level.
class TensorPolynomial {
 public:
  TensorPolynomial(int dim, int level);

  static TensorPolynomial identity(int dim, int level);

  int dim() const { return dim_; }
  int level() const { return level_; }

  double coeff(std::span<const int> word) const;
  void set_coeff(std::span<const int> word, double value);
  void add_coeff(std::span<const int> word, double value);

  std::span<const double> level_coeffs(int n) const;
  std::span<double> level_coeffs(int n);

  bool operator==(const TensorPolynomial&) const = default;

 private:
  int dim_;
  int level_;
  std::vector<std::vector<double>> levels_;  // levels_[n].size() == dim_^n
};

/// Truncated concatenation (Chen) product: coefficient of w is the sum of
/// a(u) * b(v) over all splittings w = uv; levels above N are discarded.
/// Throws std::invalid_argument on dimension or truncation mismatch.
TensorPolynomial chen_product(const TensorPolynomial& a, const TensorPolynomial& b);

/// Signature of one linear segment: coefficient of (g1..gn) is
/// (prod_i increment[g_i]) / n!.
TensorPolynomial tensor_exp(std::span<const double> increment, int level);

}  // namespace esig
