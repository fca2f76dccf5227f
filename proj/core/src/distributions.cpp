#include "arhygarch/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace arhyg {

double std_t_logpdf(double z, double nu) {
  if (!(nu > 2.0)) {
    throw std::domain_error("std_t_logpdf: nu must exceed 2 for unit variance");
  }
  const double a = std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1.0));
  return -a - 0.5 * std::log(std::numbers::pi * (nu - 2.0)) -
         0.5 * (nu + 1.0) * std::log1p(z * z / (nu - 2.0));
}

double normal_logpdf(double u, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("normal_logpdf: sigma2 must be positive");
  }
  return -0.5 * (std::log(2.0 * std::numbers::pi) + std::log(sigma2) + u * u / sigma2);
}

double gamma_sample(RngStream& rng, double shape) {
  if (!(shape >= 1.0)) {
    throw std::domain_error("gamma_sample: shape must be >= 1");
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double chisq_sample(RngStream& rng, double nu) {
  if (!(nu > 2.0)) {
    throw std::domain_error("chisq_sample: nu must exceed 2");
  }
  return 2.0 * gamma_sample(rng, 0.5 * nu);
}

double std_t_sample(RngStream& rng, double nu) {
  if (!(nu > 2.0)) {
    throw std::domain_error("std_t_sample: nu must exceed 2 for unit variance");
  }
  const double n = rng.normal();
  const double s = chisq_sample(rng, nu);
  return n * std::sqrt((nu - 2.0) / s);
}

double normal_sample(RngStream& rng, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("normal_sample: sigma2 must be positive");
  }
  return std::sqrt(sigma2) * rng.normal();
}

}  // namespace arhyg
