#include "arhygarch/lagpoly.hpp"

#include <cmath>
#include <stdexcept>

namespace arhyg {

FracDiffCoeffs fracdiff_coeffs(double d, std::size_t truncation) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::domain_error("fracdiff_coeffs: d must lie in [0, 1]");
  }
  FracDiffCoeffs out;
  out.d = d;
  out.coeffs.resize(truncation + 1);
  out.coeffs[0] = 1.0;
  for (std::size_t j = 1; j <= truncation; ++j) {
    const double jd = static_cast<double>(j);
    out.coeffs[j] = out.coeffs[j - 1] * (jd - 1.0 - d) / jd;
  }
  return out;
}

LagWeights hygarch_weights(double d, double beta, double gamma, double delta,
                           std::size_t truncation) {
  if (!(d >= 0.0 && d < 1.0)) {
    throw std::domain_error("hygarch_weights: d must lie in [0, 1)");
  }
  if (!(std::abs(beta) < 1.0)) {
    throw std::domain_error(
        "hygarch_weights: |beta| must be < 1 (geometric inversion of (1 - beta L) diverges)");
  }
  if (truncation < 1) {
    throw std::domain_error("hygarch_weights: truncation must be >= 1");
  }

  const FracDiffCoeffs frac = fracdiff_coeffs(d, truncation);

  LagWeights out;
  out.d = d;
  out.beta = beta;
  out.gamma = gamma;
  out.delta = delta;
  out.ratio_coeffs.resize(truncation + 1);
  out.weights.assign(truncation + 1, 0.0);

  // (1 - gamma L)(1-L)^d expanded term-by-term, then divided by (1 - beta L)
  // via the one-step recurrence c[j] = g[j] + beta c[j-1].
  out.ratio_coeffs[0] = 1.0;
  for (std::size_t j = 1; j <= truncation; ++j) {
    const double g = frac.coeffs[j] - gamma * frac.coeffs[j - 1];
    out.ratio_coeffs[j] = g + beta * out.ratio_coeffs[j - 1];
    out.weights[j] = -delta * out.ratio_coeffs[j];
  }
  return out;
}

double weight_tail_mass(const LagWeights& weights) {
  double mass = 0.0;
  for (std::size_t j = 1; j < weights.weights.size(); ++j) {
    mass += std::abs(weights.weights[j]);
  }
  return mass;
}

}  // namespace arhyg
