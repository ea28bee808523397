#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tsn/distribution.hpp"
#include "tsn/rng.hpp"

namespace tsn {

enum class TruncationDirection { Left, Right, Double };

/// i.i.d. skew-normal draws through the stochastic representation
/// X = xi + omega (delta |Z0| + sqrt(1-delta^2) Z1).
inline std::vector<double> sample_sn(const SnParams& p, std::size_t n,
                                     RngStream stream) {
  p.validate();
  if (n == 0) throw std::invalid_argument("sample_sn: n must be at least 1");
  const double delta = p.alpha / std::sqrt(1.0 + p.alpha * p.alpha);
  const double tail = std::sqrt(1.0 - delta * delta);
  Rng rng(stream);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double z0 = rng.normal();
    const double z1 = rng.normal();
    x = p.xi + p.omega * (delta * std::fabs(z0) + tail * z1);
  }
  return out;
}

/// i.i.d. truncated skew-normal draws by CDF inversion: every value lands in
/// the window exactly (rejection would stall under heavy truncation).
inline std::vector<double> sample_tsn(const TsnModel& m, std::size_t n,
                                      RngStream stream) {
  if (n == 0) throw std::invalid_argument("sample_tsn: n must be at least 1");
  const auto& p = m.params();
  const auto& w = m.window();
  const double lo = std::isfinite(w.lower) ? w.lower : p.xi - 15.0 * p.omega;
  const double hi = std::isfinite(w.upper) ? w.upper : p.xi + 15.0 * p.omega;
  Rng rng(stream);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double target = m.cdf_at_lower() + rng.uniform() * m.truncation_mass();
    x = std::clamp(detail::invert_sn_cdf(target, p, lo, hi), w.lower, w.upper);
  }
  return out;
}

/// Window achieving truncation rate tau for the given parent parameters:
/// Left keeps the upper 1-tau mass, Right the lower 1-tau, Double splits
/// tau/2 per side.
inline TruncationWindow truncation_bounds(TruncationDirection direction,
                                          double tau, const SnParams& p) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("truncation_bounds: tau must lie in (0,1)");
  const double inf = std::numeric_limits<double>::infinity();
  switch (direction) {
    case TruncationDirection::Left:
      return {sn_quantile(tau, p), inf};
    case TruncationDirection::Right:
      return {-inf, sn_quantile(1.0 - tau, p)};
    case TruncationDirection::Double:
      return {sn_quantile(0.5 * tau, p), sn_quantile(1.0 - 0.5 * tau, p)};
  }
  throw std::invalid_argument("truncation_bounds: unknown direction");
}

}  // namespace tsn
