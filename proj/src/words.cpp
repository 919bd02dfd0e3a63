#include "esig/words.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esig {

namespace {

std::size_t pow_size(int dim, int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= static_cast<std::size_t>(dim);
  return p;
}

void check_letters(std::span<const int> letters, int dim) {
  if (dim < 1) throw std::invalid_argument("word dimension must be positive");
  for (int g : letters)
    if (g < 1 || g > dim)
      throw std::invalid_argument("word letter " + std::to_string(g) +
                                  " outside 1.." + std::to_string(dim));
}

}  // namespace

Word::Word(std::vector<int> letters_in, int dim_in)
    : letters(std::move(letters_in)), dim(dim_in) {
  check_letters(letters, dim);
}

std::size_t word_index(std::span<const int> letters, int dim) {
  check_letters(letters, dim);
  std::size_t idx = 0;
  for (int g : letters) idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(g - 1);
  return idx;
}

std::vector<int> word_from_index(std::size_t index, int dim, int length) {
  std::vector<int> letters(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(dim)) + 1;
    index /= static_cast<std::size_t>(dim);
  }
  return letters;
}

namespace {

void shuffle_rec(std::span<const int> w1, std::size_t i1, std::span<const int> w2, std::size_t i2,
                 std::vector<int>& acc, std::vector<std::vector<int>>& out) {
  if (i1 == w1.size() && i2 == w2.size()) {
    out.push_back(acc);
    return;
  }
  if (i1 < w1.size()) {
    acc.push_back(w1[i1]);
    shuffle_rec(w1, i1 + 1, w2, i2, acc, out);
    acc.pop_back();
  }
  if (i2 < w2.size()) {
    acc.push_back(w2[i2]);
    shuffle_rec(w1, i1, w2, i2 + 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> shuffle(std::span<const int> w1, std::span<const int> w2) {
  std::vector<std::vector<int>> out;
  std::vector<int> acc;
  acc.reserve(w1.size() + w2.size());
  shuffle_rec(w1, 0, w2, 0, acc, out);
  return out;
}

TensorPolynomial::TensorPolynomial(int dim, int level) : dim_(dim), level_(level) {
  if (dim < 1) throw std::invalid_argument("TensorPolynomial: dimension must be positive");
  if (level < 0) throw std::invalid_argument("TensorPolynomial: level must be non-negative");
  levels_.resize(static_cast<std::size_t>(level) + 1);
  for (int n = 0; n <= level; ++n)
    levels_[static_cast<std::size_t>(n)].assign(pow_size(dim, n), 0.0);
}

TensorPolynomial TensorPolynomial::identity(int dim, int level) {
  TensorPolynomial p(dim, level);
  p.levels_[0][0] = 1.0;
  return p;
}

double TensorPolynomial::coeff(std::span<const int> word) const {
  const int n = static_cast<int>(word.size());
  if (n > level_) throw std::invalid_argument("coeff: word longer than truncation level");
  return levels_[static_cast<std::size_t>(n)][word_index(word, dim_)];
}

void TensorPolynomial::set_coeff(std::span<const int> word, double value) {
  const int n = static_cast<int>(word.size());
  if (n > level_) throw std::invalid_argument("set_coeff: word longer than truncation level");
  levels_[static_cast<std::size_t>(n)][word_index(word, dim_)] = value;
}

void TensorPolynomial::add_coeff(std::span<const int> word, double value) {
  const int n = static_cast<int>(word.size());
  if (n > level_) throw std::invalid_argument("add_coeff: word longer than truncation level");
  levels_[static_cast<std::size_t>(n)][word_index(word, dim_)] += value;
}

std::span<const double> TensorPolynomial::level_coeffs(int n) const {
  if (n < 0 || n > level_) throw std::invalid_argument("level_coeffs: level out of range");
  return levels_[static_cast<std::size_t>(n)];
}

std::span<double> TensorPolynomial::level_coeffs(int n) {
  if (n < 0 || n > level_) throw std::invalid_argument("level_coeffs: level out of range");
  return levels_[static_cast<std::size_t>(n)];
}

TensorPolynomial chen_product(const TensorPolynomial& a, const TensorPolynomial& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("chen_product: dimension mismatch");
  if (a.level() != b.level())
    throw std::invalid_argument("chen_product: truncation level mismatch");
  const int d = a.dim();
  const int N = a.level();
  TensorPolynomial c(d, N);
  for (int n = 0; n <= N; ++n) {
    auto out = c.level_coeffs(n);
    for (int k = 0; k <= n; ++k) {
      auto pre = a.level_coeffs(k);
      auto suf = b.level_coeffs(n - k);
      const std::size_t stride = suf.size();
      for (std::size_t p = 0; p < pre.size(); ++p) {
        if (pre[p] == 0.0) continue;
        const double ap = pre[p];
        double* dst = out.data() + p * stride;
        for (std::size_t q = 0; q < stride; ++q) dst[q] += ap * suf[q];
      }
    }
  }
  return c;
}

TensorPolynomial tensor_exp(std::span<const double> increment, int level) {
  const int d = static_cast<int>(increment.size());
  TensorPolynomial p = TensorPolynomial::identity(d, level);
  for (int n = 1; n <= level; ++n) {
    auto prev = p.level_coeffs(n - 1);
    auto cur = p.level_coeffs(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double base = prev[i] * inv_n;
      for (int g = 0; g < d; ++g)
        cur[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(g)] =
            base * increment[static_cast<std::size_t>(g)];
    }
  }
  return p;
}

}  // namespace esig
