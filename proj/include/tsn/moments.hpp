#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "tsn/distribution.hpp"
#include "tsn/quadrature.hpp"

// Theoretical moments of the truncated skew-normal distribution via adaptive
// quadrature. Integration happens in the standardized variable z = (x-xi)/omega
// so node placement is stable for any location/scale; the window mass comes
// from the Owen's-T distribution function, not from quadrature.

namespace tsn {

/// A weighted-moment request E[X^k Phi(X)^r | window]. Only k <= 3 and
/// r <= 1 are supported; (k,r) = (0,0) is the normalizing check.
struct MomentRequest {
  TsnModel model;
  int power_k = 1;
  int phi_weight_r = 0;

  void validate() const {
    if (power_k < 0 || power_k > 3)
      throw std::invalid_argument("MomentRequest: power_k must be in [0,3]");
    if (phi_weight_r < 0 || phi_weight_r > 1)
      throw std::invalid_argument("MomentRequest: phi_weight_r must be 0 or 1");
  }
};

namespace detail {

inline TruncationWindow standardized_window(const TsnModel& m) {
  const auto& p = m.params();
  const auto& w = m.window();
  return {std::isfinite(w.lower) ? (w.lower - p.xi) / p.omega : w.lower,
          std::isfinite(w.upper) ? (w.upper - p.xi) / p.omega : w.upper};
}

// Unnormalized skew-normal weight in standardized coordinates.
inline double sn_z_weight(double z, double alpha) {
  return 2.0 * std_normal_pdf(z) * std_normal_cdf(alpha * z);
}

// E[g(Z) | window] where Z is the standardized truncated variable.
template <typename G>
double standardized_expectation(const TsnModel& m, const G& g,
                                const QuadratureOptions& opts = {}) {
  const double alpha = m.params().alpha;
  const auto zw = standardized_window(m);
  const double raw = integrate(
      [&](double z) { return g(z) * sn_z_weight(z, alpha); }, zw, opts);
  return raw / m.truncation_mass();
}

// Mean and variance of the standardized truncated variable; shares the first
// moment between the two and applies the cancellation guard.
inline std::pair<double, double> z_mean_variance(const TsnModel& m) {
  const double m1 = standardized_expectation(m, [](double z) { return z; });
  const double m2 =
      standardized_expectation(m, [](double z) { return z * z; });
  double var = m2 - m1 * m1;
  // Recompute as a central moment when the subtraction above cancels badly.
  if (!(var > 0.0) || std::fabs(m1) > 10.0 * std::sqrt(std::max(var, 0.0))) {
    var = standardized_expectation(m, [m1](double z) {
      const double c = z - m1;
      return c * c;
    });
  }
  if (!(var > 0.0))
    throw numerical_error("tsn_variance: nonpositive variance after roundoff");
  return {m1, var};
}

// (mean, variance) of the truncated variable in data units.
inline std::pair<double, double> tsn_mean_variance(const TsnModel& m) {
  const auto [m1, var] = z_mean_variance(m);
  const auto& p = m.params();
  return {p.xi + p.omega * m1, p.omega * p.omega * var};
}

}  // namespace detail

/// Raw moment E[X^k | L <= X <= U], 1 <= k <= 3, to relative tolerance 1e-9.
inline double tsn_raw_moment(const TsnModel& m, int k) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("tsn_raw_moment: k must be 1, 2, or 3");
  const auto& p = m.params();
  return detail::standardized_expectation(m, [&](double z) {
    const double x = p.xi + p.omega * z;
    double v = x;
    for (int i = 1; i < k; ++i) v *= x;
    return v;
  });
}

inline double tsn_mean(const TsnModel& m) {
  return detail::tsn_mean_variance(m).first;
}

inline double tsn_variance(const TsnModel& m) {
  return detail::tsn_mean_variance(m).second;
}

/// The weighted moment E[Phi(X) | L <= X <= U]; Phi applies to the raw
/// observation, not the standardized one.
inline double tsn_phi_weighted_moment(const TsnModel& m) {
  const auto& p = m.params();
  return detail::standardized_expectation(
      m, [&](double z) { return std_normal_cdf(p.xi + p.omega * z); });
}

/// Dispatch for MomentRequest; covers every supported (k, r) pair.
inline double tsn_weighted_moment(const MomentRequest& req) {
  req.validate();
  if (req.phi_weight_r == 0)
    return req.power_k == 0 ? 1.0 : tsn_raw_moment(req.model, req.power_k);
  const auto& p = req.model.params();
  const int k = req.power_k;
  return detail::standardized_expectation(req.model, [&](double z) {
    const double x = p.xi + p.omega * z;
    double v = std_normal_cdf(x);
    for (int i = 0; i < k; ++i) v *= x;
    return v;
  });
}

}  // namespace tsn
