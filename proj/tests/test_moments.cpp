#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <tsn/moments.hpp>
#include <tsn/sampling.hpp>

#include "oracles.hpp"

using Catch::Approx;
using tsn::SnParams;
using tsn::TruncationWindow;
using tsn::TsnModel;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

// Quadrature-oracle raw moment, independent of the library integrator.
double oracle_raw_moment(const TsnModel& m, int k) {
  const auto& w = m.window();
  const auto& p = m.params();
  const double mass = oracle::integrate_tail(
      [&](double x) { return tsn::sn_pdf(x, p); }, w.lower, w.upper, p.xi,
      p.omega);
  const double raw = oracle::integrate_tail(
      [&](double x) { return std::pow(x, k) * tsn::sn_pdf(x, p); }, w.lower,
      w.upper, p.xi, p.omega);
  return raw / mass;
}
}  // namespace

TEST_CASE("raw moments of the standard normal", "[moments]") {
  const TsnModel m({0, 1, 0}, TruncationWindow::unbounded());
  CHECK(tsn::tsn_raw_moment(m, 1) == Approx(0.0).margin(1e-10));
  CHECK(tsn::tsn_raw_moment(m, 2) == Approx(1.0).epsilon(1e-9));
  CHECK(tsn::tsn_raw_moment(m, 3) == Approx(0.0).margin(1e-9));
  CHECK_THROWS_AS(tsn::tsn_raw_moment(m, 0), std::invalid_argument);
  CHECK_THROWS_AS(tsn::tsn_raw_moment(m, 4), std::invalid_argument);
}

TEST_CASE("half-normal moments", "[moments]") {
  const TsnModel half({0, 1, 0}, {0.0, kInf});
  // frozen closed forms: mean sqrt(2/pi), variance 1 - 2/pi
  CHECK(tsn::tsn_raw_moment(half, 1) ==
        Approx(0.7978845608028654).epsilon(1e-9));
  CHECK(tsn::tsn_mean(half) == Approx(0.7978845608028654).epsilon(1e-9));
  CHECK(tsn::tsn_variance(half) == Approx(0.3633802276324187).epsilon(1e-8));
  // and against the independent oracle
  CHECK(tsn::tsn_mean(half) == Approx(oracle_raw_moment(half, 1)).epsilon(1e-9));
}

TEST_CASE("raw moments match the quadrature oracle", "[moments]") {
  std::mt19937 gen(37);
  std::uniform_real_distribution<double> uxi(-2.0, 2.0), uomega(0.3, 3.0),
      ualpha(-6.0, 6.0), uq(0.02, 0.98);
  for (int c = 0; c < 15; ++c) {
    const SnParams p{uxi(gen), uomega(gen), ualpha(gen)};
    double a = tsn::sn_quantile(std::min(uq(gen), 0.5), p);
    double b = tsn::sn_quantile(std::max(uq(gen), 0.55), p);
    const TsnModel m(p, {a, b});
    for (int k = 1; k <= 3; ++k)
      CHECK(tsn::tsn_raw_moment(m, k) ==
            Approx(oracle_raw_moment(m, k)).epsilon(1e-7).margin(1e-9));
  }
}

TEST_CASE("phi-weighted moment", "[moments]") {
  const TsnModel std_normal({0, 1, 0}, TruncationWindow::unbounded());
  CHECK(tsn::tsn_phi_weighted_moment(std_normal) == Approx(0.5).margin(1e-10));
  const TsnModel half({0, 1, 0}, {0.0, kInf});
  // Phi(X) ~ Uniform(1/2, 1) under the half-normal
  CHECK(tsn::tsn_phi_weighted_moment(half) == Approx(0.75).margin(1e-9));
  CHECK(tsn::tsn_phi_weighted_moment(half) ==
        Approx(oracle::integrate_tail(
                   [&](double x) {
                     return oracle::norm_cdf(x) * tsn::tsn_pdf(x, half);
                   },
                   0.0, kInf, 0.0, 1.0))
            .epsilon(1e-9));

  // increasing xi strictly increases the weighted moment
  double prev = 0.0;
  for (double xi : {-1.0, 0.0, 1.0, 2.0}) {
    const TsnModel m({xi, 1.0, 1.5}, {xi - 2.0, xi + 2.0});
    const double v = tsn::tsn_phi_weighted_moment(m);
    CHECK(v > prev);
    CHECK(v < 1.0);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("moment request dispatch", "[moments]") {
  const TsnModel half({0, 1, 0}, {0.0, kInf});
  CHECK(tsn::tsn_weighted_moment({half, 0, 0}) == 1.0);
  CHECK(tsn::tsn_weighted_moment({half, 1, 0}) ==
        Approx(tsn::tsn_raw_moment(half, 1)).epsilon(1e-12));
  CHECK(tsn::tsn_weighted_moment({half, 0, 1}) ==
        Approx(tsn::tsn_phi_weighted_moment(half)).epsilon(1e-12));
  CHECK_THROWS_AS(tsn::tsn_weighted_moment({half, 1, 2}), std::invalid_argument);
}

TEST_CASE("location-scale equivariance of mean and variance", "[moments]") {
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> uc(-4.0, 4.0), ud(0.2, 4.0),
      ualpha(-5.0, 5.0), uq(0.05, 0.45);
  for (int i = 0; i < 12; ++i) {
    const SnParams p{uc(gen) * 0.25, 1.0 + uq(gen), ualpha(gen)};
    const double lo = tsn::sn_quantile(uq(gen), p);
    const double hi = tsn::sn_quantile(1.0 - uq(gen), p);
    const TsnModel base(p, {lo, hi});
    const double c = uc(gen), d = ud(gen);
    const TsnModel moved({c + d * p.xi, d * p.omega, p.alpha},
                         {c + d * lo, c + d * hi});
    CHECK(tsn::tsn_mean(moved) ==
          Approx(c + d * tsn::tsn_mean(base)).margin(1e-8 * (1.0 + d)));
    CHECK(tsn::tsn_variance(moved) ==
          Approx(d * d * tsn::tsn_variance(base)).epsilon(1e-8));
  }
}

TEST_CASE("jensen inequality and support bounds", "[moments]") {
  std::mt19937 gen(43);
  std::uniform_real_distribution<double> uxi(-2.0, 2.0), uomega(0.3, 3.0),
      ualpha(-8.0, 8.0), uq(0.02, 0.45);
  for (int i = 0; i < 15; ++i) {
    const SnParams p{uxi(gen), uomega(gen), ualpha(gen)};
    const double lo = tsn::sn_quantile(uq(gen), p);
    const double hi = tsn::sn_quantile(1.0 - uq(gen), p);
    const TsnModel m(p, {lo, hi});
    const double mean = tsn::tsn_mean(m);
    CHECK(tsn::tsn_raw_moment(m, 2) >= mean * mean - 1e-12);
    CHECK(mean >= lo);
    CHECK(mean <= hi);
  }
}

TEST_CASE("sampler agrees with the theoretical moments", "[moments]") {
  const SnParams p{0.0, 1.0, 3.0};
  const auto w = tsn::truncation_bounds(tsn::TruncationDirection::Double, 0.1, p);
  const TsnModel m(p, w);
  const std::size_t n = 1000000;
  const auto sample = tsn::sample_tsn(m, n, {20240517, 0});
  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= double(n);
  double var = 0.0;
  for (double x : sample) var += (x - mean) * (x - mean);
  var /= double(n);

  const double tmean = tsn::tsn_mean(m);
  const double tvar = tsn::tsn_variance(m);
  const double se_mean = std::sqrt(tvar / double(n));
  // MC s.e. of the variance via the fourth central moment
  double m4 = 0.0;
  for (double x : sample) m4 += std::pow(x - mean, 4);
  m4 /= double(n);
  const double se_var = std::sqrt((m4 - tvar * tvar) / double(n));
  CHECK(std::fabs(mean - tmean) < 4.0 * se_mean);
  CHECK(std::fabs(var - tvar) < 4.0 * se_var);
}

TEST_CASE("variance of a far-offset window stays positive", "[moments]") {
  // window deep in the upper tail: raw-moment subtraction would cancel badly
  const TsnModel m({0, 1, 0}, {5.0, 6.0});
  const double v = tsn::tsn_variance(m);
  CHECK(v > 0.0);
  const double direct = oracle::integrate(
      [&](double x) {
        const double mu = tsn::tsn_mean(m);
        return (x - mu) * (x - mu) * tsn::tsn_pdf(x, m);
      },
      5.0, 6.0, 1e-15);
  CHECK(v == Approx(direct).epsilon(1e-6));
}
