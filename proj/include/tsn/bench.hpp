#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "tsn/estimators.hpp"
#include "tsn/parallel.hpp"
#include "tsn/sampling.hpp"

// Monte Carlo scenario engine: run a simulation cell over many replications,
// summarize per-parameter bias / RMSE / median / IQR, and render tables.

namespace tsn {

inline std::string_view direction_name(TruncationDirection d) {
  switch (d) {
    case TruncationDirection::Left: return "left";
    case TruncationDirection::Right: return "right";
    case TruncationDirection::Double: return "double";
  }
  return "?";
}

/// One simulation cell.
struct ScenarioSpec {
  std::string name = "scenario";
  TruncationDirection direction = TruncationDirection::Right;
  double tau = 0.1;
  SnParams truth{0.0, 1.0, 0.0};
  std::size_t n = 500;
  int replications = 1;
  std::vector<Method> methods{Method::GridMom};
  GridSpec grid{};
  std::uint64_t base_seed = 0;
  MleOptions mle_options{};

  void validate() const {
    truth.validate();
    grid.validate();
    if (!(tau > 0.0 && tau < 1.0))
      throw std::invalid_argument("ScenarioSpec: tau must lie in (0,1)");
    if (replications < 1)
      throw std::invalid_argument("ScenarioSpec: need at least 1 replication");
    if (n < 2) throw std::invalid_argument("ScenarioSpec: n must be >= 2");
    if (methods.empty())
      throw std::invalid_argument("ScenarioSpec: methods must be nonempty");
  }
};

struct ReplicateEstimate {
  bool converged = false;
  SnParams estimate{std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN()};
};

struct MethodReplicates {
  Method method = Method::GridMom;
  std::vector<ReplicateEstimate> fits;
};

struct ScenarioResult {
  ScenarioSpec spec;
  std::vector<MethodReplicates> per_method;
};

/// Runs every replication of a scenario. Replication r draws its data from
/// stream {base_seed, r} no matter which thread executes it or which methods
/// are requested, so results are deterministic and method sets compose.
inline ScenarioResult run_scenario(const ScenarioSpec& spec,
                                   unsigned threads = 0) {
  spec.validate();
  const TruncationWindow window =
      truncation_bounds(spec.direction, spec.tau, spec.truth);
  const TsnModel model(spec.truth, window);

  ScenarioResult out;
  out.spec = spec;
  out.per_method.resize(spec.methods.size());
  for (std::size_t m = 0; m < spec.methods.size(); ++m) {
    out.per_method[m].method = spec.methods[m];
    out.per_method[m].fits.resize(spec.replications);
  }

  parallel_for(
      std::size_t(spec.replications),
      [&](std::size_t r) {
        const auto data =
            sample_tsn(model, spec.n, RngStream{spec.base_seed, r});
        for (std::size_t m = 0; m < spec.methods.size(); ++m) {
          ReplicateEstimate& slot = out.per_method[m].fits[r];
          try {
            const FitResult fitres = fit(spec.methods[m], data, window,
                                         spec.grid, spec.mle_options);
            slot.converged = fitres.converged;
            slot.estimate = fitres.estimate;
          } catch (const std::exception&) {
            slot.converged = false;
          }
        }
      },
      threads);
  return out;
}

/// One row of a Tables-1-4-style summary.
struct MetricRow {
  Method method = Method::GridMom;
  std::string_view parameter = "xi";  // "xi" | "omega" | "alpha"
  double bias = std::numeric_limits<double>::quiet_NaN();
  double rmse = std::numeric_limits<double>::quiet_NaN();
  double median = std::numeric_limits<double>::quiet_NaN();
  double iqr = std::numeric_limits<double>::quiet_NaN();
  bool blowup = false;   // any |estimate| > 100, the ">100" table convention
  int failures = 0;      // replicates dropped from the metrics
};

namespace detail {

// Linear-interpolation ("type 7") quantile of a sorted sample.
inline double quantile_type7(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = double(n - 1) * p;
  const std::size_t lo = std::size_t(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - double(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

/// Per-parameter bias, RMSE, median, and IQR over the converged replicates of
/// each method; failures are counted, not imputed.
inline std::vector<MetricRow> summarize(
    const std::vector<MethodReplicates>& per_method, const SnParams& truth) {
  constexpr std::string_view names[3] = {"xi", "omega", "alpha"};
  std::vector<MetricRow> rows;
  for (const auto& mr : per_method) {
    if (mr.fits.empty())
      throw std::invalid_argument("summarize: no replicates to summarize");
    const double truths[3] = {truth.xi, truth.omega, truth.alpha};
    int failures = 0;
    for (const auto& f : mr.fits)
      if (!f.converged) ++failures;
    for (int j = 0; j < 3; ++j) {
      MetricRow row;
      row.method = mr.method;
      row.parameter = names[j];
      row.failures = failures;
      std::vector<double> values;
      values.reserve(mr.fits.size());
      for (const auto& f : mr.fits) {
        if (!f.converged) continue;
        const double v = j == 0   ? f.estimate.xi
                         : j == 1 ? f.estimate.omega
                                  : f.estimate.alpha;
        values.push_back(v);
        if (std::fabs(v) > 100.0) row.blowup = true;
      }
      if (!values.empty()) {
        double bias = 0.0, mse = 0.0;
        for (double v : values) {
          bias += v - truths[j];
          mse += (v - truths[j]) * (v - truths[j]);
        }
        row.bias = bias / double(values.size());
        row.rmse = std::sqrt(mse / double(values.size()));
        std::sort(values.begin(), values.end());
        row.median = detail::quantile_type7(values, 0.5);
        row.iqr = detail::quantile_type7(values, 0.75) -
                  detail::quantile_type7(values, 0.25);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

inline std::vector<MetricRow> summarize(const ScenarioResult& result) {
  return summarize(result.per_method, result.spec.truth);
}

enum class TableFormat { Csv, Text };

namespace detail {

inline std::string format_metric(double v) {
  if (std::isnan(v)) return "nan";
  if (std::fabs(v) > 100.0) return ">100";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

/// Renders metric rows as CSV or aligned text. Cells whose magnitude exceeds
/// 100 print as ">100".
inline std::string emit_table(const std::vector<MetricRow>& rows,
                              TableFormat format) {
  std::string out;
  if (format == TableFormat::Csv) {
    out += "method,parameter,bias,rmse,median,iqr,failures\n";
    for (const auto& r : rows) {
      out += std::string(method_name(r.method)) + "," +
             std::string(r.parameter) + "," + detail::format_metric(r.bias) +
             "," + detail::format_metric(r.rmse) + "," +
             detail::format_metric(r.median) + "," +
             detail::format_metric(r.iqr) + "," + std::to_string(r.failures) +
             "\n";
    }
    return out;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %-9s %12s %12s %12s %12s %9s\n",
                "method", "parameter", "bias", "rmse", "median", "iqr",
                "failures");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %-9s %12s %12s %12s %12s %9d\n",
                  std::string(method_name(r.method)).c_str(),
                  std::string(r.parameter).c_str(),
                  detail::format_metric(r.bias).c_str(),
                  detail::format_metric(r.rmse).c_str(),
                  detail::format_metric(r.median).c_str(),
                  detail::format_metric(r.iqr).c_str(), r.failures);
    out += buf;
  }
  return out;
}

/// Replicate-level CSV for a scenario run. NaN estimates of failed fits
/// render as "nan".
inline std::string emit_replicates_csv(const ScenarioResult& result) {
  std::string out = "method,replication,converged,xi,omega,alpha\n";
  char buf[160];
  for (const auto& mr : result.per_method) {
    for (std::size_t r = 0; r < mr.fits.size(); ++r) {
      const auto& f = mr.fits[r];
      std::snprintf(buf, sizeof buf, "%s,%zu,%d,%.17g,%.17g,%.17g\n",
                    std::string(method_name(mr.method)).c_str(), r,
                    f.converged ? 1 : 0, f.estimate.xi, f.estimate.omega,
                    f.estimate.alpha);
      out += buf;
    }
  }
  return out;
}

struct TimingRow {
  Method method = Method::GridMom;
  std::size_t n = 0;
  int grid_points = 0;
  double mean_seconds = 0.0;
};

/// Mean wall-clock fit time for GRID-MOM and GRID-MLE per (n, G) cell, each
/// repeat on freshly sampled right-truncated data.
inline std::vector<TimingRow> timing_study(std::span<const std::size_t> n_values,
                                           std::span<const int> grid_sizes,
                                           int repeats,
                                           std::uint64_t base_seed = 0x7131) {
  if (repeats < 3)
    throw std::invalid_argument("timing_study: need at least 3 repeats");
  const SnParams truth{0.0, 1.0, 2.0};
  const TruncationWindow window =
      truncation_bounds(TruncationDirection::Right, 0.1, truth);
  const TsnModel model(truth, window);
  using clock = std::chrono::steady_clock;

  std::vector<TimingRow> rows;
  std::uint64_t stream = 0;
  for (std::size_t n : n_values) {
    for (int g : grid_sizes) {
      const GridSpec grid{5.0, g};
      double mom_total = 0.0, mle_total = 0.0;
      for (int rep = 0; rep < repeats; ++rep) {
        const auto data = sample_tsn(model, n, RngStream{base_seed, stream++});
        const auto t0 = clock::now();
        (void)fit_grid_mom(data, window, grid);
        const auto t1 = clock::now();
        (void)fit_grid_mle(data, window, grid);
        const auto t2 = clock::now();
        mom_total += std::chrono::duration<double>(t1 - t0).count();
        mle_total += std::chrono::duration<double>(t2 - t1).count();
      }
      rows.push_back({Method::GridMom, n, g, mom_total / repeats});
      rows.push_back({Method::GridMle, n, g, mle_total / repeats});
    }
  }
  return rows;
}

inline std::string emit_timing_csv(const std::vector<TimingRow>& rows) {
  std::string out = "method,n,grid_points,mean_seconds\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%d,%.6g\n",
                  std::string(method_name(r.method)).c_str(), r.n,
                  r.grid_points, r.mean_seconds);
    out += buf;
  }
  return out;
}

/// GRID-MOM on one right-truncated sample (tau = 0.1, n = 500) under each of
/// several grids; probes boundary behavior when the true shape lies outside
/// the grid range.
inline std::vector<FitResult> misspecified_range_study(
    double alpha_true, std::span<const GridSpec> grids, std::uint64_t seed) {
  const SnParams truth{0.0, 1.0, alpha_true};
  const TruncationWindow window =
      truncation_bounds(TruncationDirection::Right, 0.1, truth);
  const auto data = sample_tsn(TsnModel(truth, window), 500, RngStream{seed, 0});
  std::vector<FitResult> fits;
  for (const auto& grid : grids)
    fits.push_back(fit_grid_mom(data, window, grid));
  return fits;
}

}  // namespace tsn
