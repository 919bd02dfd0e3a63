#pragma once

#include <stdexcept>
#include <string>

namespace esig {

/// Requested work exceeds a configured desk-scale ceiling (diagram size,
/// enumeration budget, truncation level).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature failed to reach the requested tolerance. Carries the
/// best available estimate and its error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}

  double estimate;
  double error_bound;
};

}  // namespace esig
