#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/model.hpp"

// Adaptive Gauss-Kronrod (G7,K15) quadrature. Infinite endpoints are handled
// by the rational substitution x = u/(1-u^2), u in (-1,1).

namespace tsn {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;       // floor for integrals that are themselves ~0
  int max_subdivisions = 200;
};

namespace detail {

// QUADPACK dqk15 nodes/weights on [-1,1]; xgk[7] = 0 is the shared center.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

template <typename F>
Panel kronrod_panel(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = kGaussWeights[3] * fc;
  double resk = kKronrodWeights[7] * fc;
  double flo[7], fhi[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    flo[i] = f(center - dx);
    fhi[i] = f(center + dx);
    const double pair = flo[i] + fhi[i];
    resk += kKronrodWeights[i] * pair;
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * pair;
  }
  // QUADPACK-style error estimate via the centered absolute residual.
  const double mean = 0.5 * resk;
  double resasc = kKronrodWeights[7] * std::fabs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeights[i] *
              (std::fabs(flo[i] - mean) + std::fabs(fhi[i] - mean));
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, resk * half, err};
}

}  // namespace detail

/// Adaptive quadrature of f over the finite interval [a, b].
template <typename F>
double integrate_finite(const F& f, double a, double b,
                        const QuadratureOptions& opts = {}) {
  if (a == b) return 0.0;
  std::vector<detail::Panel> panels;
  panels.reserve(64);
  panels.push_back(detail::kronrod_panel(f, a, b));
  for (int sub = 0; sub < opts.max_subdivisions; ++sub) {
    double total = 0.0, err = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      err += p.error;
    }
    if (err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total)))
      return total;
    // split the worst panel
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const detail::Panel bad = panels[worst];
    const double mid = 0.5 * (bad.a + bad.b);
    if (!(mid > bad.a && mid < bad.b)) break;  // interval at FP resolution
    panels[worst] = detail::kronrod_panel(f, bad.a, mid);
    panels.push_back(detail::kronrod_panel(f, mid, bad.b));
  }
  double total = 0.0, err = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    err += p.error;
  }
  if (err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total)))
    return total;
  throw quadrature_error("integrate: subdivision budget exhausted");
}

namespace detail {

// x = u/(1-u^2) maps (-1,1) onto the real line.
inline double rational_map(double u) { return u / (1.0 - u * u); }

inline double rational_map_jacobian(double u) {
  const double d = 1.0 - u * u;
  return (1.0 + u * u) / (d * d);
}

inline double rational_map_inverse(double x) {
  // stable root of x u^2 + u - x = 0 inside (-1,1)
  return 2.0 * x / (1.0 + std::sqrt(1.0 + 4.0 * x * x));
}

}  // namespace detail

/// Adaptive quadrature of f over a window whose endpoints may be infinite.
template <typename F>
double integrate(const F& f, const TruncationWindow& window,
                 const QuadratureOptions& opts = {}) {
  window.validate();
  const double lo = window.lower;
  const double hi = window.upper;
  if (std::isfinite(lo) && std::isfinite(hi))
    return integrate_finite(f, lo, hi, opts);
  const double ulo = std::isfinite(lo) ? detail::rational_map_inverse(lo) : -1.0;
  const double uhi = std::isfinite(hi) ? detail::rational_map_inverse(hi) : 1.0;
  auto g = [&f](double u) {
    const double x = detail::rational_map(u);
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * detail::rational_map_jacobian(u);
  };
  return integrate_finite(g, ulo, uhi, opts);
}

}  // namespace tsn
