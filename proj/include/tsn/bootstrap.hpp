#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tsn/estimators.hpp"
#include "tsn/parallel.hpp"
#include "tsn/sampling.hpp"

namespace tsn {

struct BootstrapSummary {
  int requested = 0;                              // B
  std::vector<std::array<double, 3>> replicates;  // successful (xi, omega, alpha)
  std::array<double, 3> se{0.0, 0.0, 0.0};
  int failures = 0;
};

/// Parametric bootstrap standard errors: draw B samples of size n from the
/// fitted model, refit each with the chosen estimator, and take per-parameter
/// sample standard deviations. Non-converged replicates are dropped and
/// counted. Replicate b owns the stream {mix(rng), b}, so aggregation is
/// order-independent.
inline BootstrapSummary parametric_bootstrap(
    const FitResult& fitted, const TruncationWindow& window, std::size_t n,
    int B, Method method, RngStream rng, const GridSpec& grid = {},
    const MleOptions& mle_options = {}, unsigned threads = 0) {
  if (B < 2)
    throw std::invalid_argument("parametric_bootstrap: B must be at least 2");
  if (!fitted.converged)
    throw std::invalid_argument(
        "parametric_bootstrap: the fitted result did not converge");
  const TsnModel model(fitted.estimate, window);
  const std::uint64_t sub_base = mix_seed(rng.base_seed, rng.stream_index);

  struct Slot {
    bool ok = false;
    std::array<double, 3> estimate{};
  };
  std::vector<Slot> slots(B);
  parallel_for(
      std::size_t(B),
      [&](std::size_t b) {
        const auto sample = sample_tsn(model, n, RngStream{sub_base, b});
        try {
          const FitResult refit = fit(method, sample, window, grid, mle_options);
          if (refit.converged)
            slots[b] = {true,
                        {refit.estimate.xi, refit.estimate.omega,
                         refit.estimate.alpha}};
        } catch (const std::exception&) {
          // dropped and counted below
        }
      },
      threads);

  BootstrapSummary out;
  out.requested = B;
  for (const auto& s : slots)
    if (s.ok)
      out.replicates.push_back(s.estimate);
    else
      ++out.failures;
  if (out.replicates.size() < 2)
    throw estimation_error("parametric_bootstrap: all replicates failed");

  const double m = double(out.replicates.size());
  for (int j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (const auto& r : out.replicates) mean += r[j];
    mean /= m;
    double ss = 0.0;
    for (const auto& r : out.replicates) {
      const double d = r[j] - mean;
      ss += d * d;
    }
    out.se[j] = std::sqrt(ss / (m - 1.0));
  }
  return out;
}

}  // namespace tsn
