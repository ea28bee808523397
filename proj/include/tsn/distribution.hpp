#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "tsn/model.hpp"
#include "tsn/normal.hpp"

// Skew-normal and truncated skew-normal density, distribution function,
// quantile, and log-likelihood.

namespace tsn {

/// Skew-normal density (2/omega) phi(z) Phi(alpha z), z = (x-xi)/omega.
inline double sn_pdf(double x, const SnParams& p) {
  if (std::isinf(x)) return 0.0;
  const double z = (x - p.xi) / p.omega;
  return 2.0 / p.omega * std_normal_pdf(z) * std_normal_cdf(p.alpha * z);
}

/// log sn_pdf accumulated as log 2 - log omega + log phi + log Phi, with the
/// tail-safe log Phi so large |alpha| stays finite.
inline double sn_log_pdf(double x, const SnParams& p) {
  const double z = (x - p.xi) / p.omega;
  return std::log(2.0 / p.omega) + std_normal_log_pdf(z) +
         std_normal_log_cdf(p.alpha * z);
}

/// Skew-normal distribution function Phi(z) - 2 T(z, alpha); accepts +-inf.
inline double sn_cdf(double x, const SnParams& p) {
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  const double z = (x - p.xi) / p.omega;
  const double value = std_normal_cdf(z) - 2.0 * owen_t(z, p.alpha);
  return std::clamp(value, 0.0, 1.0);
}

namespace detail {

// Solve sn_cdf(x) = target on [lo, hi] by bisection-safeguarded Newton.
// The bracket must satisfy F(lo) <= target <= F(hi).
inline double invert_sn_cdf(double target, const SnParams& p, double lo,
                            double hi) {
  // Normal approximation through the skew-normal mean/sd as initial guess.
  const double delta = p.alpha / std::sqrt(1.0 + p.alpha * p.alpha);
  const double mean = p.xi + p.omega * delta * kSqrt2OverPi;
  const double sd = p.omega * std::sqrt(1.0 - 2.0 * delta * delta / kPi);
  double x = mean + sd * std_normal_quantile(target);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = sn_cdf(x, p) - target;
    if (std::fabs(fx) <= 1e-13) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double d = sn_pdf(x, p);
    double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <=
        4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(x)))
      return next;
    x = next;
  }
  return x;
}

}  // namespace detail

/// Quantile of the skew-normal distribution. Bracketed on xi +- 15 omega
/// (covers tail probabilities down to ~1e-50) and refined by safeguarded
/// Newton; |sn_cdf(result) - prob| <= 1e-10.
inline double sn_quantile(double prob, const SnParams& p) {
  p.validate();
  if (!(prob > 0.0 && prob < 1.0))
    throw std::invalid_argument("sn_quantile: prob must lie in (0,1)");
  return detail::invert_sn_cdf(prob, p, p.xi - 15.0 * p.omega,
                               p.xi + 15.0 * p.omega);
}

/// Skew-normal model restricted to a known truncation window. Construction
/// caches F_SN at the endpoints and validates the kept mass.
class TsnModel {
 public:
  TsnModel(const SnParams& params, const TruncationWindow& window)
      : params_(params), window_(window) {
    params_.validate();
    window_.validate();
    cdf_lower_ = sn_cdf(window_.lower, params_);
    mass_ = sn_cdf(window_.upper, params_) - cdf_lower_;
    if (!(mass_ >= kMinTruncationMass))
      throw degenerate_window_error(
          "TsnModel: truncation window keeps mass below 1e-12");
  }

  const SnParams& params() const { return params_; }
  const TruncationWindow& window() const { return window_; }
  /// F_SN(upper) - F_SN(lower), the truncated-density denominator.
  double truncation_mass() const { return mass_; }
  double cdf_at_lower() const { return cdf_lower_; }

 private:
  SnParams params_;
  TruncationWindow window_;
  double mass_;
  double cdf_lower_;
};

/// Truncated density: sn_pdf renormalized on the window, zero outside it.
inline double tsn_pdf(double x, const TsnModel& m) {
  if (!m.window().contains(x)) return 0.0;
  return sn_pdf(x, m.params()) / m.truncation_mass();
}

inline double tsn_log_pdf(double x, const TsnModel& m) {
  if (!m.window().contains(x))
    return -std::numeric_limits<double>::infinity();
  return sn_log_pdf(x, m.params()) - std::log(m.truncation_mass());
}

/// Clamp-normalized distribution function: 0 at the lower edge, 1 at the
/// upper edge.
inline double tsn_cdf(double x, const TsnModel& m) {
  const double clamped = std::clamp(x, m.window().lower, m.window().upper);
  const double value =
      (sn_cdf(clamped, m.params()) - m.cdf_at_lower()) / m.truncation_mass();
  return std::clamp(value, 0.0, 1.0);
}

/// Truncated log-likelihood: sum of log sn_pdf minus n log of the kept mass.
/// Every observation must lie inside the window.
inline double tsn_loglik(std::span<const double> data, const TsnModel& m) {
  if (data.empty())
    throw std::invalid_argument("tsn_loglik: need at least one observation");
  double sum = 0.0;
  for (double x : data) {
    if (!m.window().contains(x))
      throw data_outside_window_error(
          "tsn_loglik: observation outside the truncation window");
    sum += sn_log_pdf(x, m.params());
  }
  return sum - double(data.size()) * std::log(m.truncation_mass());
}

}  // namespace tsn
