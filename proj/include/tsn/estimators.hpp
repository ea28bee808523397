#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tsn/distribution.hpp"
#include "tsn/moments.hpp"
#include "tsn/nelder_mead.hpp"
#include "tsn/rng.hpp"

// The five estimation procedures for truncated skew-normal data:
//   mle       joint maximization of the truncated log-likelihood
//   mom       first three raw moments matched by a damped Newton root-finder
//   mwm       mean / variance / Phi-average matched by least squares
//   grid-mom  shape fixed on a grid, (xi, omega) from the two-moment system,
//             grid point chosen by log-likelihood
//   grid-mle  same grid, (xi, omega) from the profile likelihood

namespace tsn {

enum class Method { Mle, Mom, Mwm, GridMom, GridMle };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::Mle: return "mle";
    case Method::Mom: return "mom";
    case Method::Mwm: return "mwm";
    case Method::GridMom: return "grid-mom";
    case Method::GridMle: return "grid-mle";
  }
  return "?";
}

inline std::optional<Method> method_from_name(std::string_view name) {
  if (name == "mle") return Method::Mle;
  if (name == "mom") return Method::Mom;
  if (name == "mwm") return Method::Mwm;
  if (name == "grid-mom") return Method::GridMom;
  if (name == "grid-mle") return Method::GridMle;
  return std::nullopt;
}

enum class SolveStatus { Ok, NoConverge, Degenerate };

/// Equally spaced symmetric shape grid over [-a, a] with G points,
/// spacing 2a/(G-1). Both endpoints are grid members exactly.
struct GridSpec {
  double half_width = 5.0;
  int points = 401;

  void validate() const {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw std::invalid_argument("GridSpec: half_width must be positive");
    if (points < 2)
      throw std::invalid_argument("GridSpec: need at least 2 grid points");
  }

  double spacing() const { return 2.0 * half_width / (points - 1); }

  double value(int g) const {
    if (g == 0) return -half_width;
    if (g == points - 1) return half_width;
    return (half_width * g - half_width * (points - 1 - g)) / (points - 1);
  }
};

/// Empirical moments with the population divisor n, plus the Phi-average.
struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // (1/n) sum (x_i - mean)^2
  double raw2 = 0.0;      // (1/n) sum x_i^2
  double raw3 = 0.0;      // (1/n) sum x_i^3
  double mean_phi = 0.0;  // (1/n) sum Phi(x_i)
};

inline SampleStats compute_stats(std::span<const double> data) {
  if (data.size() < 2)
    throw std::invalid_argument("compute_stats: need at least 2 observations");
  SampleStats s;
  s.n = data.size();
  const double n = double(s.n);
  for (double x : data) {
    s.mean += x;
    s.raw2 += x * x;
    s.raw3 += x * x * x;
    s.mean_phi += std_normal_cdf(x);
  }
  s.mean /= n;
  s.raw2 /= n;
  s.raw3 /= n;
  s.mean_phi /= n;
  for (double x : data) {
    const double d = x - s.mean;
    s.variance += d * d;
  }
  s.variance /= n;
  return s;
}

struct LocationScaleResult {
  double xi = std::numeric_limits<double>::quiet_NaN();
  double omega = std::numeric_limits<double>::quiet_NaN();
  SolveStatus status = SolveStatus::NoConverge;
  double residual_norm = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
};

struct GridTracePoint {
  double alpha = 0.0;
  double xi = std::numeric_limits<double>::quiet_NaN();
  double omega = std::numeric_limits<double>::quiet_NaN();
  double loglik = std::numeric_limits<double>::quiet_NaN();
  SolveStatus status = SolveStatus::NoConverge;
};

struct FitResult {
  Method method = Method::Mle;
  SnParams estimate{};
  double loglik = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  double residual_norm = std::numeric_limits<double>::quiet_NaN();
  std::vector<GridTracePoint> grid_trace{};
};

/// Multi-start control for fit_mle. Every start is sampled uniformly from the
/// data-derived cube [m-1,m+1] x [max(s-1,1),max(s+1,2)] x [-5,5]; draws come
/// off one fixed stream, so the k=1 start is the first of the k=20 starts.
struct MleOptions {
  int multistart_count = 1;
  std::uint64_t start_seed = 0;
};

namespace detail {

inline void require_in_window(std::span<const double> data,
                              const TruncationWindow& w) {
  for (double x : data)
    if (!w.contains(x))
      throw data_outside_window_error(
          "fit: observation outside the truncation window");
}

// Untruncated skew-normal moment inversion: exact start when truncation is
// absent, close otherwise.
inline void untruncated_start(double alpha, double mean, double variance,
                              double& xi0, double& omega0) {
  const double delta = alpha / std::sqrt(1.0 + alpha * alpha);
  const double denom = 1.0 - 2.0 * delta * delta / kPi;
  omega0 = std::sqrt(variance / denom);
  xi0 = mean - omega0 * delta * kSqrt2OverPi;
}

// Moment-based full start: shape from sample-skewness inversion (delta
// clamped to +-0.995), then location/scale by untruncated inversion.
inline SnParams moment_start(const SampleStats& s) {
  const double m3c =
      s.raw3 - 3.0 * s.mean * s.raw2 + 2.0 * s.mean * s.mean * s.mean;
  const double skew = m3c / std::pow(s.variance, 1.5);
  const double c = 2.0 * std::fabs(skew) / (4.0 - kPi);
  const double c23 = std::cbrt(c) * std::cbrt(c);
  double delta = std::sqrt(c23 / ((2.0 / kPi) * (1.0 + c23)));
  if (!(delta < 0.995)) delta = 0.995;
  if (skew < 0.0) delta = -delta;
  const double alpha = delta / std::sqrt(1.0 - delta * delta);
  SnParams p;
  p.alpha = alpha;
  untruncated_start(alpha, s.mean, s.variance, p.xi, p.omega);
  return p;
}

}  // namespace detail

/// Solves E[X] = mean and Var[X] = variance for (xi, omega) at fixed shape.
/// Damped Newton with a forward-difference Jacobian; a failure is reported in
/// the status, never thrown, so a grid sweep can skip the point.
inline LocationScaleResult solve_location_scale(double alpha,
                                                const SampleStats& stats,
                                                const TruncationWindow& window) {
  window.validate();
  if (!(stats.variance > 0.0) || stats.n < 2) {
    LocationScaleResult out;
    out.status = SolveStatus::Degenerate;
    return out;
  }

  // Residuals scaled so the convergence test is relative; false = the
  // candidate model is unusable (degenerate window, failed quadrature).
  auto residual = [&](double xi, double omega, double r[2]) -> bool {
    if (!(omega > 0.0) || !std::isfinite(xi) || !std::isfinite(omega))
      return false;
    try {
      TsnModel m({xi, omega, alpha}, window);
      const auto [mean, var] = detail::tsn_mean_variance(m);
      r[0] = (mean - stats.mean) / (1.0 + std::fabs(stats.mean));
      r[1] = (var - stats.variance) / (1.0 + stats.variance);
      return std::isfinite(r[0]) && std::isfinite(r[1]);
    } catch (const error&) {
      return false;
    }
  };

  LocationScaleResult out;
  detail::untruncated_start(alpha, stats.mean, stats.variance, out.xi,
                            out.omega);
  double r[2];
  if (!residual(out.xi, out.omega, r)) {
    out.status = SolveStatus::Degenerate;
    return out;
  }
  double norm = std::max(std::fabs(r[0]), std::fabs(r[1]));
  constexpr double kTol = 1e-8;
  for (out.iterations = 0; out.iterations < 60 && norm > kTol;
       ++out.iterations) {
    // steps scaled by omega so the iteration is affine-equivariant
    const double h = 1e-6 * out.omega;
    double rx[2], rw[2];
    if (!residual(out.xi + h, out.omega, rx) ||
        !residual(out.xi, out.omega + h, rw))
      break;
    const double j00 = (rx[0] - r[0]) / h, j01 = (rw[0] - r[0]) / h;
    const double j10 = (rx[1] - r[1]) / h, j11 = (rw[1] - r[1]) / h;
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) break;
    const double dxi = (-r[0] * j11 + r[1] * j01) / det;
    const double domega = (-r[1] * j00 + r[0] * j10) / det;
    bool accepted = false;
    double t = 1.0;
    for (int half = 0; half < 25; ++half, t *= 0.5) {
      const double nxi = out.xi + t * dxi;
      const double nomega = out.omega + t * domega;
      if (!(nomega > 0.0)) continue;
      double rn[2];
      if (!residual(nxi, nomega, rn)) continue;
      const double nnorm = std::max(std::fabs(rn[0]), std::fabs(rn[1]));
      if (nnorm < norm) {
        out.xi = nxi;
        out.omega = nomega;
        r[0] = rn[0];
        r[1] = rn[1];
        norm = nnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // damping exhausted: stuck
  }
  out.residual_norm = norm;
  out.status = norm <= kTol ? SolveStatus::Ok : SolveStatus::NoConverge;
  return out;
}

namespace detail {

// Shared grid scaffolding for grid-mom / grid-mle. solve_point fills a trace
// entry for one grid value.
template <typename SolvePoint>
FitResult grid_sweep(Method method, std::span<const double> data,
                     const TruncationWindow& window, const GridSpec& grid,
                     const SolvePoint& solve_point) {
  grid.validate();
  window.validate();
  require_in_window(data, window);
  const SampleStats stats = compute_stats(data);
  if (!(stats.variance > 0.0))
    throw estimation_error("grid fit: sample variance is zero");

  FitResult out;
  out.method = method;
  out.grid_trace.resize(grid.points);
  for (int g = 0; g < grid.points; ++g)
    out.grid_trace[g] = solve_point(grid.value(g), stats);

  // Argmax of the log-likelihood over ok points. Ties prefer the smaller
  // |alpha|, then the smaller alpha.
  int best = -1;
  for (int g = 0; g < grid.points; ++g) {
    const auto& pt = out.grid_trace[g];
    if (pt.status != SolveStatus::Ok || !std::isfinite(pt.loglik)) continue;
    if (best < 0) {
      best = g;
      continue;
    }
    const auto& cur = out.grid_trace[best];
    const bool better =
        pt.loglik > cur.loglik ||
        (pt.loglik == cur.loglik &&
         (std::fabs(pt.alpha) < std::fabs(cur.alpha) ||
          (std::fabs(pt.alpha) == std::fabs(cur.alpha) && pt.alpha < cur.alpha)));
    if (better) best = g;
  }
  if (best < 0)
    throw estimation_error("grid fit: every grid point failed");
  const auto& sel = out.grid_trace[best];
  out.estimate = {sel.xi, sel.omega, sel.alpha};
  out.loglik = sel.loglik;
  out.converged = true;
  return out;
}

}  // namespace detail

/// GRID-MOM: per grid point solve the two-moment system for (xi, omega),
/// evaluate the truncated log-likelihood there, and keep the argmax point.
inline FitResult fit_grid_mom(std::span<const double> data,
                              const TruncationWindow& window,
                              const GridSpec& grid = {}) {
  return detail::grid_sweep(
      Method::GridMom, data, window, grid,
      [&](double alpha, const SampleStats& stats) {
        GridTracePoint pt;
        pt.alpha = alpha;
        const auto ls = solve_location_scale(alpha, stats, window);
        pt.xi = ls.xi;
        pt.omega = ls.omega;
        pt.status = ls.status;
        if (ls.status == SolveStatus::Ok) {
          try {
            pt.loglik = tsn_loglik(data, TsnModel({ls.xi, ls.omega, alpha}, window));
          } catch (const error&) {
            pt.status = SolveStatus::Degenerate;
          }
        }
        return pt;
      });
}

/// GRID-MLE: per grid point maximize the profile likelihood over
/// (xi, log omega), warm-started at the moment solution when it exists, so
/// each profile value dominates the GRID-MOM value at the same grid point.
inline FitResult fit_grid_mle(std::span<const double> data,
                              const TruncationWindow& window,
                              const GridSpec& grid = {}) {
  return detail::grid_sweep(
      Method::GridMle, data, window, grid,
      [&](double alpha, const SampleStats& stats) {
        GridTracePoint pt;
        pt.alpha = alpha;
        auto objective = [&](std::span<const double> x) {
          try {
            TsnModel m({x[0], std::exp(x[1]), alpha}, window);
            return -tsn_loglik(data, m);
          } catch (const error&) {
            return std::numeric_limits<double>::infinity();
          }
        };
        const auto ls = solve_location_scale(alpha, stats, window);
        double xi0, omega0;
        if (ls.status == SolveStatus::Ok) {
          xi0 = ls.xi;
          omega0 = ls.omega;
        } else {
          detail::untruncated_start(alpha, stats.mean, stats.variance, xi0,
                                    omega0);
        }
        const std::array<double, 2> start{xi0, std::log(omega0)};
        const double span = ls.status == SolveStatus::Ok ? 0.1 : 0.4;
        const std::array<double, 2> step{span * omega0, span};
        NelderMeadOptions opts;
        opts.x_tol = 1e-6;
        opts.f_tol = 1e-9;
        opts.max_evals = 600;
        const auto nm = nelder_mead(objective, start, step, opts);
        if (!std::isfinite(nm.value)) {
          pt.status = SolveStatus::Degenerate;
          return pt;
        }
        pt.xi = nm.x[0];
        pt.omega = std::exp(nm.x[1]);
        pt.loglik = -nm.value;
        pt.status = nm.converged ? SolveStatus::Ok : SolveStatus::NoConverge;
        return pt;
      });
}

/// Maximum likelihood on (xi, log omega, alpha) by Nelder-Mead, with optional
/// multi-start from the data-derived cube.
inline FitResult fit_mle(std::span<const double> data,
                         const TruncationWindow& window,
                         const MleOptions& options = {}) {
  window.validate();
  if (data.size() < 3)
    throw std::invalid_argument("fit_mle: need at least 3 observations");
  if (options.multistart_count < 1)
    throw std::invalid_argument("fit_mle: multistart_count must be >= 1");
  detail::require_in_window(data, window);
  const SampleStats stats = compute_stats(data);
  if (!(stats.variance > 0.0))
    throw estimation_error("fit_mle: sample variance is zero");

  auto objective = [&](std::span<const double> x) {
    try {
      TsnModel m({x[0], std::exp(x[1]), x[2]}, window);
      return -tsn_loglik(data, m);
    } catch (const error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const double sd = std::sqrt(stats.variance);
  const double omega_lo = std::max(sd - 1.0, 1.0);
  const double omega_hi = std::max(sd + 1.0, 2.0);
  Rng rng(RngStream{options.start_seed, 0});

  FitResult out;
  out.method = Method::Mle;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < options.multistart_count; ++k) {
    const double xi0 = rng.uniform(stats.mean - 1.0, stats.mean + 1.0);
    const double omega0 = rng.uniform(omega_lo, omega_hi);
    const double alpha0 = rng.uniform(-5.0, 5.0);
    const std::array<double, 3> start{xi0, std::log(omega0), alpha0};
    const std::array<double, 3> step{0.5, 0.3, 1.0};
    NelderMeadOptions opts;  // x_tol 1e-8, 2000-eval budget
    const auto nm = nelder_mead(objective, start, step, opts);
    if (nm.value < best) {
      best = nm.value;
      out.estimate = {nm.x[0], std::exp(nm.x[1]), nm.x[2]};
      out.loglik = -nm.value;
      out.converged = nm.converged;
    }
  }
  if (!std::isfinite(best))
    throw estimation_error("fit_mle: no start produced a usable model");
  return out;
}

namespace detail {

// Damped Newton for the three-equation raw-moment system on
// (xi, log omega, alpha). Residuals are scaled by 1 + |target|.
inline FitResult solve_mom(const SampleStats& stats,
                           const TruncationWindow& window) {
  const double targets[3] = {stats.mean, stats.raw2, stats.raw3};
  // The third-moment direction is nearly collinear with (xi, omega)
  // adjustments, so quadrature noise amplifies ~1e5-fold into the solution;
  // moments are integrated well below the default tolerance here.
  QuadratureOptions tight;
  tight.rel_tol = 1e-13;
  auto residual = [&](const double th[3], double r[3]) -> bool {
    try {
      TsnModel m({th[0], std::exp(th[1]), th[2]}, window);
      const auto& p = m.params();
      for (int k = 0; k < 3; ++k) {
        const double raw = standardized_expectation(
            m,
            [&](double z) {
              const double x = p.xi + p.omega * z;
              double v = x;
              for (int i = 0; i < k; ++i) v *= x;
              return v;
            },
            tight);
        r[k] = (raw - targets[k]) / (1.0 + std::fabs(targets[k]));
      }
      return std::isfinite(r[0]) && std::isfinite(r[1]) && std::isfinite(r[2]);
    } catch (const error&) {
      return false;
    }
  };

  FitResult out;
  out.method = Method::Mom;
  const SnParams p0 = moment_start(stats);
  double th[3] = {p0.xi, std::log(p0.omega), p0.alpha};
  double r[3];
  if (!residual(th, r)) {
    out.estimate = p0;
    return out;
  }
  auto norm_of = [](const double v[3]) {
    return std::max({std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2])});
  };
  double norm = norm_of(r);
  // iterate well past the reporting tolerance: the third-moment direction is
  // ill-conditioned and a 1e-7 residual can still leave ~1e-4 parameter error
  constexpr double kTarget = 1e-11;
  constexpr double kTol = 1e-7;
  for (int it = 0; it < 100 && norm > kTarget; ++it) {
    double jac[3][3];
    bool ok = true;
    for (int j = 0; j < 3 && ok; ++j) {
      const double h = 1e-6 * (1.0 + std::fabs(th[j]));
      double thj[3] = {th[0], th[1], th[2]};
      thj[j] += h;
      double rj[3];
      ok = residual(thj, rj);
      if (!ok) break;
      for (int i = 0; i < 3; ++i) jac[i][j] = (rj[i] - r[i]) / h;
    }
    if (!ok) break;
    // solve jac * d = -r by Gaussian elimination with partial pivoting
    double a[3][4];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] = jac[i][j];
      a[i][3] = -r[i];
    }
    bool singular = false;
    for (int col = 0; col < 3 && !singular; ++col) {
      int piv = col;
      for (int i = col + 1; i < 3; ++i)
        if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
      if (a[piv][col] == 0.0 || !std::isfinite(a[piv][col])) {
        singular = true;
        break;
      }
      if (piv != col)
        for (int j = col; j < 4; ++j) std::swap(a[piv][j], a[col][j]);
      for (int i = col + 1; i < 3; ++i) {
        const double fac = a[i][col] / a[col][col];
        for (int j = col; j < 4; ++j) a[i][j] -= fac * a[col][j];
      }
    }
    if (singular) break;
    double d[3];
    for (int i = 2; i >= 0; --i) {
      double s = a[i][3];
      for (int j = i + 1; j < 3; ++j) s -= a[i][j] * d[j];
      d[i] = s / a[i][i];
    }
    bool accepted = false;
    double t = 1.0;
    for (int half = 0; half < 25; ++half, t *= 0.5) {
      double nth[3] = {th[0] + t * d[0], th[1] + t * d[1], th[2] + t * d[2]};
      if (std::fabs(nth[2]) > 1e6 || std::fabs(nth[1]) > 700.0) continue;
      double rn[3];
      if (!residual(nth, rn)) continue;
      const double nnorm = norm_of(rn);
      if (nnorm < norm) {
        for (int i = 0; i < 3; ++i) {
          th[i] = nth[i];
          r[i] = rn[i];
        }
        norm = nnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.estimate = {th[0], std::exp(th[1]), th[2]};
  out.residual_norm = norm;
  out.converged = norm <= kTol;
  return out;
}

// Least squares on the (mean, variance, Phi-average) system by Nelder-Mead
// with progressively tighter restarts. Derivative-free on purpose: the
// Phi-average goes flat for large alpha and gradient polish would wander
// along the valley. The start is (mean, sd, 0); a skewness-based shape start
// is unreliable here because truncation distorts the sample skewness.
// Convergence is the optimizer's criterion (it is a minimizer, not a
// root-finder); the residual norm is reported alongside.
inline FitResult solve_mwm(const SampleStats& stats,
                           const TruncationWindow& window) {
  auto objective = [&](std::span<const double> x) {
    try {
      TsnModel m({x[0], std::exp(x[1]), x[2]}, window);
      const auto [mean, var] = tsn_mean_variance(m);
      const double r0 = (mean - stats.mean) / (1.0 + std::fabs(stats.mean));
      const double r1 = (var - stats.variance) / (1.0 + stats.variance);
      const double r2 = (tsn_phi_weighted_moment(m) - stats.mean_phi) /
                        (1.0 + std::fabs(stats.mean_phi));
      return r0 * r0 + r1 * r1 + r2 * r2;
    } catch (const error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const SnParams p0{stats.mean, std::sqrt(stats.variance), 0.0};
  std::array<double, 3> start{p0.xi, std::log(p0.omega), p0.alpha};
  NelderMeadOptions opts;
  opts.x_tol = 1e-9;
  opts.f_tol = 1e-16;
  opts.max_evals = 2000;
  std::array<double, 3> step{0.5 * p0.omega, 0.25, 0.5};
  auto nm = nelder_mead(objective, start, step, opts);
  bool optimizer_done = nm.converged;
  for (double scale : {2e-2, 1e-3, 5e-5}) {
    if (nm.value < 1e-22) break;
    const std::array<double, 3> warm{nm.x[0], nm.x[1], nm.x[2]};
    const std::array<double, 3> warm_step{scale * std::exp(nm.x[1]), scale,
                                          scale};
    const auto again = nelder_mead(objective, warm, warm_step, opts);
    if (again.value < nm.value) {
      nm = again;
      optimizer_done = again.converged;
    }
  }

  FitResult out;
  out.method = Method::Mwm;
  out.estimate = {nm.x[0], std::exp(nm.x[1]), nm.x[2]};
  out.residual_norm = std::isfinite(nm.value) ? std::sqrt(nm.value)
                                              : std::numeric_limits<double>::infinity();
  out.converged = optimizer_done && std::isfinite(nm.value);
  return out;
}

}  // namespace detail

/// Method of moments: match the first three raw moments.
inline FitResult fit_mom(std::span<const double> data,
                         const TruncationWindow& window) {
  window.validate();
  if (data.size() < 3)
    throw std::invalid_argument("fit_mom: need at least 3 observations");
  detail::require_in_window(data, window);
  const SampleStats stats = compute_stats(data);
  if (!(stats.variance > 0.0))
    throw estimation_error("fit_mom: sample variance is zero");
  FitResult out = detail::solve_mom(stats, window);
  try {
    out.loglik = tsn_loglik(data, TsnModel(out.estimate, window));
  } catch (const std::exception&) {
    // leave loglik NaN when the returned point cannot host a model
  }
  return out;
}

/// Method of weighted moments: least squares on mean, variance, and the
/// Phi-average.
inline FitResult fit_mwm(std::span<const double> data,
                         const TruncationWindow& window) {
  window.validate();
  if (data.size() < 2)
    throw std::invalid_argument("fit_mwm: need at least 2 observations");
  detail::require_in_window(data, window);
  const SampleStats stats = compute_stats(data);
  if (!(stats.variance > 0.0))
    throw estimation_error("fit_mwm: sample variance is zero");
  FitResult out = detail::solve_mwm(stats, window);
  try {
    out.loglik = tsn_loglik(data, TsnModel(out.estimate, window));
  } catch (const std::exception&) {
  }
  return out;
}

/// Dispatch by method tag; grid and MLE options apply where relevant.
inline FitResult fit(Method method, std::span<const double> data,
                     const TruncationWindow& window, const GridSpec& grid = {},
                     const MleOptions& mle_options = {}) {
  switch (method) {
    case Method::Mle: return fit_mle(data, window, mle_options);
    case Method::Mom: return fit_mom(data, window);
    case Method::Mwm: return fit_mwm(data, window);
    case Method::GridMom: return fit_grid_mom(data, window, grid);
    case Method::GridMle: return fit_grid_mle(data, window, grid);
  }
  throw std::invalid_argument("fit: unknown method");
}

}  // namespace tsn
