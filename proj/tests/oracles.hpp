// Independent reference computations used by the unit and acceptance tests.
// Nothing here shares code with the library paths under test: fractional
// coefficients come from Gamma-function identities instead of the recurrence,
// series expansion from explicit geometric convolution instead of one-step
// division, and the likelihood from a straight-line reimplementation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

// Signed coefficients of (1-L)^d from Gamma(d+1)(-1)^k / (Gamma(k+1)Gamma(d-k+1)),
// evaluated through lgamma and the reflection formula so large k stays finite:
// phi_k = -exp(lgamma(d+1) + lgamma(k-d) - lgamma(k+1)) * sin(pi d) / pi.
inline std::vector<long double> fracdiff_gamma(double d, std::size_t J) {
  std::vector<long double> phi(J + 1, 0.0L);
  phi[0] = 1.0L;
  if (d == 0.0) return phi;
  if (d == 1.0) {
    if (J >= 1) phi[1] = -1.0L;
    return phi;
  }
  const long double dl = d;
  for (std::size_t k = 1; k <= J; ++k) {
    const long double kl = static_cast<long double>(k);
    const long double magnitude =
        std::exp(std::lgamma(dl + 1.0L) + std::lgamma(kl - dl) - std::lgamma(kl + 1.0L));
    phi[k] = -magnitude * std::sin(std::numbers::pi_v<long double> * dl) /
             std::numbers::pi_v<long double>;
  }
  return phi;
}

// Expansion of (1 - gamma L)(1 - beta L)^{-1}(1-L)^d by explicit polynomial
// convolution against the geometric series of (1 - beta L)^{-1}.
inline std::vector<long double> ratio_coeffs_conv(double d, double beta, double gamma,
                                                  std::size_t J) {
  const std::vector<long double> phi = fracdiff_gamma(d, J);
  std::vector<long double> g(J + 1);
  g[0] = 1.0L;
  for (std::size_t j = 1; j <= J; ++j) {
    g[j] = phi[j] - static_cast<long double>(gamma) * phi[j - 1];
  }
  std::vector<long double> c(J + 1, 0.0L);
  for (std::size_t j = 0; j <= J; ++j) {
    long double acc = 0.0L;
    long double bpow = 1.0L;  // beta^(j-i) as i runs down from j
    for (std::size_t back = 0; back <= j; ++back) {
      acc += g[j - back] * bpow;
      bpow *= static_cast<long double>(beta);
    }
    c[j] = acc;
  }
  return c;
}

// Composite 10-node Gauss-Legendre quadrature.
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t panels) {
  static const double nodes[5] = {0.1488743389816312, 0.4333953941292472,
                                  0.6794095682990244, 0.8650633666889845,
                                  0.9739065285171717};
  static const double weights[5] = {0.2955242247147529, 0.2692667193099963,
                                    0.2190863625159820, 0.1494513491505806,
                                    0.0666713443086881};
  const double width = (hi - lo) / static_cast<double>(panels);
  long double total = 0.0L;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    const double mid = a + 0.5 * width;
    const double half = 0.5 * width;
    for (int i = 0; i < 5; ++i) {
      total += weights[i] * (f(mid + half * nodes[i]) + f(mid - half * nodes[i])) * half;
    }
  }
  return static_cast<double>(total);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace detail {

inline long double betacf(long double a, long double b, long double x) {
  const long double tiny = 1e-30L;
  const int max_iter = 500;
  long double qab = a + b, qap = a + 1.0L, qam = a - 1.0L;
  long double c = 1.0L;
  long double d = 1.0L - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0L / d;
  long double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const long double m2 = 2.0L * m;
    long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0L + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0L + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0L / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0L + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0L + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double del = d * c;
    h *= del;
    if (std::abs(del - 1.0L) < 1e-18L) break;
  }
  return h;
}

inline long double betai(long double a, long double b, long double x) {
  if (x <= 0.0L) return 0.0L;
  if (x >= 1.0L) return 1.0L;
  const long double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log(1.0L - x));
  if (x < (a + 1.0L) / (a + b + 2.0L)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0L - bt * betacf(b, a, 1.0L - x) / b;
}

}  // namespace detail

// CDF of the classical Student-t with nu degrees of freedom.
inline double student_t_cdf(double x, double nu) {
  const long double p =
      0.5L * detail::betai(0.5L * nu, 0.5L, nu / (nu + static_cast<long double>(x) * x));
  return static_cast<double>(x >= 0.0 ? 1.0L - p : p);
}

// CDF of the unit-variance (standardized) Student-t.
inline double std_t_cdf(double z, double nu) {
  return student_t_cdf(z * std::sqrt(nu / (nu - 2.0)), nu);
}

// Kolmogorov-Smirnov sup statistic of draws against a continuous CDF.
inline double ks_statistic(std::vector<double> draws,
                           const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    sup = std::max(sup, std::abs(f - static_cast<double>(i) / n));
    sup = std::max(sup, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return sup;
}

// Straight-line reimplementation of the joint log-likelihood: own coefficient
// construction, own filter loop, own density formulas. omega holds the
// intercept path omega_t for t = 1..T.
inline double straight_line_loglik(const std::vector<double>& r,
                                   const std::vector<double>& x,
                                   const std::vector<double>& omega, double gamma,
                                   double beta, double d, double delta, double nu,
                                   double xi, double phi_load, double tau1, double tau2,
                                   double sigma_u2, std::size_t J) {
  const std::size_t T = r.size();
  const std::vector<long double> c = ratio_coeffs_conv(d, beta, gamma, J);

  std::vector<long double> lx(T);
  long double fill = 0.0L;
  for (std::size_t i = 0; i < T; ++i) {
    lx[i] = std::log(static_cast<long double>(x[i]));
    fill += lx[i];
  }
  fill /= static_cast<long double>(T);

  const long double pi = std::numbers::pi_v<long double>;
  long double ll = 0.0L;
  for (std::size_t t = 1; t <= T; ++t) {
    long double lh = omega[t - 1];
    for (std::size_t j = 1; j <= J; ++j) {
      const long double past =
          (t > j) ? lx[t - 1 - j] : fill;
      lh += -static_cast<long double>(delta) * c[j] * past;
    }
    const long double h = std::exp(lh);
    const long double z = r[t - 1] / std::sqrt(h);
    const long double u = lx[t - 1] - xi - static_cast<long double>(phi_load) * lh -
                          tau1 * z - tau2 * (z * z - 1.0L);

    ll += std::lgamma(0.5L * (nu + 1.0L)) - std::lgamma(0.5L * nu) -
          0.5L * std::log(pi * (nu - 2.0L)) - 0.5L * lh -
          0.5L * (nu + 1.0L) * std::log(1.0L + z * z / (nu - 2.0L));
    ll += -0.5L * std::log(2.0L * pi) - 0.5L * std::log((long double)sigma_u2) -
          0.5L * u * u / sigma_u2;
  }
  return static_cast<double>(ll);
}

}  // namespace oracles
