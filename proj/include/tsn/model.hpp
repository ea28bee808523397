#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsn/errors.hpp"

namespace tsn {

/// Smallest skew-normal mass a truncation window may keep. Below this the
/// truncated-density denominator is treated as degenerate rather than divided.
inline constexpr double kMinTruncationMass = 1e-12;

/// Location / scale / shape triple of the skew-normal family.
struct SnParams {
  double xi = 0.0;
  double omega = 1.0;
  double alpha = 0.0;

  void validate() const {
    if (!std::isfinite(xi) || !std::isfinite(omega) || !std::isfinite(alpha))
      throw std::invalid_argument("SnParams: all fields must be finite");
    if (!(omega > 0.0))
      throw std::invalid_argument("SnParams: omega must be positive");
  }
};

/// Known truncation interval [lower, upper]; either endpoint may be infinite.
struct TruncationWindow {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  static TruncationWindow unbounded() { return {}; }

  bool contains(double x) const { return x >= lower && x <= upper; }

  bool is_unbounded() const {
    return std::isinf(lower) && std::isinf(upper);
  }

  void validate() const {
    if (std::isnan(lower) || std::isnan(upper))
      throw std::invalid_argument("TruncationWindow: endpoints must not be NaN");
    if (!(lower < upper))
      throw std::invalid_argument("TruncationWindow: lower must be below upper");
  }
};

}  // namespace tsn
