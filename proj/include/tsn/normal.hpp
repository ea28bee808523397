#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

// Standard normal pdf/cdf/quantile and Owen's T function. Everything here is
// pure double-precision scalar math; the rest of the library is built on it.

namespace tsn {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log sqrt(2 pi)
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2OverPi = 0.79788456080286535588;  // sqrt(2/pi)

inline double std_normal_pdf(double z) {
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

inline double std_normal_log_pdf(double z) {
  return -0.5 * z * z - kLogSqrt2Pi;
}

/// Distribution function; accepts +-infinity.
inline double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / kSqrt2);
}

/// log Phi(z), usable arbitrarily far into the lower tail. erfc carries the
/// value down to z ~ -37.5 before underflowing; past that an asymptotic
/// expansion of Mills' ratio takes over.
inline double std_normal_log_cdf(double z) {
  if (z > -37.0) return std::log(std_normal_cdf(z));
  const double zz = z * z;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) / zz;
    sum += term;
  }
  return -0.5 * zz - kLogSqrt2Pi - std::log(-z) + std::log(sum);
}

/// Inverse of std_normal_cdf. Wichura's PPND16 rational approximations,
/// accurate to ~1e-16 over (0,1).
inline double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("std_normal_quantile: p must lie in (0,1)");
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return num / den;
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258) * r +
            3.64784832476320460504) * r + 5.76949722146069140550) * r +
          4.63033784615654529590) * r + 1.42343711074968357734);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940) * r +
          2.05319162663775882187) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580) * r +
          5.46378491116411436990) * r + 6.65790464350110377720);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return q < 0.0 ? -x : x;
}

namespace detail {

// 24-point Gauss-Legendre rule on [0,1].
inline constexpr double kGl24Nodes[24] = {
    2.40639000148934468e-03, 1.26357220143452631e-02, 3.08627239986336011e-02,
    5.67922364977995198e-02, 8.99990070130485265e-02, 1.29937904210722821e-01,
    1.75953174031512227e-01, 2.27289264305580219e-01, 2.83103246186977464e-01,
    3.42478660151918302e-01, 4.04440566263191859e-01, 4.67971553568697185e-01,
    5.32028446431302759e-01, 5.95559433736808197e-01, 6.57521339848081698e-01,
    7.16896753813022536e-01, 7.72710735694419837e-01, 8.24046825968487773e-01,
    8.70062095789277179e-01, 9.10000992986951474e-01, 9.43207763502200480e-01,
    9.69137276001366343e-01, 9.87364277985654737e-01, 9.97593609998510655e-01};

inline constexpr double kGl24Weights[24] = {
    6.17061489999354545e-03, 1.42656943144668716e-02, 2.21387194087097755e-02,
    2.96492924577183709e-02, 3.66732407055402054e-02, 4.30950807659766441e-02,
    4.88093260520570324e-02, 5.37221350579828033e-02, 5.77528340268628065e-02,
    6.08352364639017096e-02, 6.29187281734141513e-02, 6.39690976733761074e-02,
    6.39690976733761074e-02, 6.29187281734141513e-02, 6.08352364639017096e-02,
    5.77528340268628065e-02, 5.37221350579828033e-02, 4.88093260520570324e-02,
    4.30950807659766441e-02, 3.66732407055402054e-02, 2.96492924577183709e-02,
    2.21387194087097755e-02, 1.42656943144668716e-02, 6.17061489999354545e-03};

// Power series in a for T(h,a), 0 <= a <= 1. Converges for any h but the
// term count grows with h^2/2, so callers restrict it to small h.
inline double owen_t_series(double h, double a) {
  const double hs = -0.5 * h * h;
  const double as = a * a;
  double jj = 1.0;
  double aj = a / (2.0 * kPi);
  double dj = std::expm1(hs);
  double gj = hs * std::exp(hs);
  double value = std::atan(a) / (2.0 * kPi);
  const double min_j = hs * hs;  // terms shrink once j exceeds ~h^2/2
  for (int j = 1; j <= 160; ++j) {
    const double term = dj * aj / jj;
    value += term;
    if (std::fabs(term) < 1e-18 && j > 2 && double(j) * double(j) > min_j)
      break;
    jj += 2.0;
    aj *= as;
    dj = gj - dj;
    gj *= hs / double(j + 1);
  }
  return value;
}

// Fixed-order Gauss-Legendre quadrature of the defining integral with t = a x,
// x in [0,1]. For h >= 3 the integrand is small and gentle enough that 24
// nodes reach full double accuracy.
inline double owen_t_quadrature(double h, double a) {
  const double hs = -0.5 * h * h;
  const double as = a * a;
  double sum = 0.0;
  for (int i = 0; i < 24; ++i) {
    const double x = kGl24Nodes[i];
    const double r = 1.0 + as * x * x;
    sum += kGl24Weights[i] * std::exp(hs * r) / r;
  }
  return sum * a / (2.0 * kPi);
}

// T(h,a) for h >= 0 and 0 <= a <= 1.
inline double owen_t_core(double h, double a) {
  return h <= 3.0 ? owen_t_series(h, a) : owen_t_quadrature(h, a);
}

}  // namespace detail

/// Owen's T function T(h,a) = (1/2pi) int_0^a exp(-h^2(1+t^2)/2)/(1+t^2) dt.
/// Region-split series with a fixed-order quadrature fallback; absolute error
/// below 1e-14 everywhere.
inline double owen_t(double h, double a) {
  if (std::isnan(h) || std::isnan(a))
    return std::numeric_limits<double>::quiet_NaN();
  h = std::fabs(h);                      // T(-h,a) = T(h,a)
  const double sign = a < 0.0 ? -1.0 : 1.0;
  a = std::fabs(a);                      // T(h,-a) = -T(h,a)
  if (a == 0.0) return 0.0;
  if (h == 0.0) return sign * std::atan(a) / (2.0 * kPi);
  double value;
  if (a == 1.0) {
    const double c = std_normal_cdf(h);
    value = 0.5 * c * (1.0 - c);
  } else if (a <= 1.0) {
    value = detail::owen_t_core(h, a);
  } else {
    // Reduce a > 1 through T(h,a) = 1/2(Phi(h)+Phi(ah)) - Phi(h)Phi(ah)
    // - T(ah, 1/a), arranged on each branch to avoid cancellation.
    const double ah = a * h;
    if (h <= 0.67) {
      const double nh = 0.5 * std::erf(h / kSqrt2);    // Phi(h) - 1/2
      const double nah = 0.5 * std::erf(ah / kSqrt2);
      value = 0.25 - nh * nah - detail::owen_t_core(ah, 1.0 / a);
    } else {
      const double nh = 0.5 * std::erfc(h / kSqrt2);   // 1 - Phi(h)
      const double nah = 0.5 * std::erfc(ah / kSqrt2);
      value = 0.5 * (nh + nah) - nh * nah - detail::owen_t_core(ah, 1.0 / a);
    }
  }
  return sign * value;
}

/// Deterministic 64-bit mix for deriving sub-seeds (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tsn
