#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace tsn {

struct NelderMeadOptions {
  double x_tol = 1e-8;   // simplex size, relative to 1 + |best|
  double f_tol = 1e-10;  // function spread, relative to 1 + |f_best|
  int max_evals = 2000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimizer (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2). The objective may return +infinity for infeasible points.
template <typename F>
NelderMeadResult nelder_mead(const F& f, std::span<const double> start,
                             std::span<const double> step,
                             const NelderMeadOptions& opts = {}) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> verts(dim + 1,
                                         std::vector<double>(start.begin(), start.end()));
  for (std::size_t j = 0; j < dim; ++j) verts[j + 1][j] += step[j];
  std::vector<double> fvals(dim + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(std::span<const double>(x));
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (std::size_t i = 0; i <= dim; ++i) fvals[i] = eval(verts[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  bool converged = false;
  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t best = order[0], worst = order[dim],
                      second_worst = order[dim - 1];

    double xspread = 0.0;
    for (std::size_t i = 1; i <= dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        xspread = std::max(xspread,
                           std::fabs(verts[order[i]][j] - verts[best][j]));
    double xscale = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
      xscale = std::max(xscale, std::fabs(verts[best][j]));
    const double fspread = fvals[worst] - fvals[best];
    if (xspread <= opts.x_tol * (1.0 + xscale) &&
        (!std::isfinite(fspread) ? false
                                 : fspread <= opts.f_tol * (1.0 + std::fabs(fvals[best])))) {
      converged = true;
      break;
    }

    for (std::size_t j = 0; j < dim; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i <= dim; ++i)
        if (i != worst) c += verts[i][j];
      centroid[j] = c / double(dim);
    }
    for (std::size_t j = 0; j < dim; ++j)
      xr[j] = centroid[j] + (centroid[j] - verts[worst][j]);
    const double fr = eval(xr);
    if (fr < fvals[best]) {
      for (std::size_t j = 0; j < dim; ++j)
        xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
      const double fe = eval(xe);
      if (fe < fr) {
        verts[worst] = xe;
        fvals[worst] = fe;
      } else {
        verts[worst] = xr;
        fvals[worst] = fr;
      }
    } else if (fr < fvals[second_worst]) {
      verts[worst] = xr;
      fvals[worst] = fr;
    } else {
      const bool outside = fr < fvals[worst];
      const auto& base = outside ? xr : verts[worst];
      for (std::size_t j = 0; j < dim; ++j)
        xc[j] = centroid[j] + 0.5 * (base[j] - centroid[j]);
      const double fc = eval(xc);
      if (fc < std::min(fr, fvals[worst])) {
        verts[worst] = xc;
        fvals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < dim; ++j)
            verts[i][j] = verts[best][j] + 0.5 * (verts[i][j] - verts[best][j]);
          fvals[i] = eval(verts[i]);
          if (evals >= opts.max_evals) break;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i)
    if (fvals[i] < fvals[best]) best = i;
  return {verts[best], fvals[best], evals, converged};
}

}  // namespace tsn
