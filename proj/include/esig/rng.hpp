#pragma once

#include <cmath>
#include <cstdint>

namespace esig {

/// SplitMix64: tiny, fully specified generator so seeded runs are
/// reproducible independent of the standard library implementation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one cached spare).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Decorrelated stream for substream k (counter-based seeding).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + k * 0x9e3779b97f4a7c15ULL));
    g.next();
    return g.next();
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace esig
