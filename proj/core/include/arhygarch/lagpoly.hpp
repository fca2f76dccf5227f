#pragma once

#include <cstddef>
#include <vector>

namespace arhyg {

/// Truncated expansion of the fractional differencing operator (1-L)^d.
///
/// coeffs[j] is the coefficient of L^j; coeffs[0] == 1 and all later
/// coefficients are negative for 0 < d < 1. Coefficients are produced by the
/// multiplicative recurrence coeffs[j] = coeffs[j-1] * (j-1-d) / j, which stays
/// finite where direct Gamma-function ratios overflow (j > ~170).
struct FracDiffCoeffs {
  double d = 0.0;
  std::vector<double> coeffs;  // size truncation+1

  std::size_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

FracDiffCoeffs fracdiff_coeffs(double d, std::size_t truncation);

/// Lag weights of the hyperbolic GARCH filter
///   log h_t = omega_t + sum_{j>=1} weights[j] * log x_{t-j}.
///
/// ratio_coeffs[j] expands (1 - gamma L) (1 - beta L)^{-1} (1-L)^d, with
/// ratio_coeffs[0] == 1, and weights[j] = -delta * ratio_coeffs[j] for j >= 1
/// (weights[0] is kept at 0 so indices line up with lags).
struct LagWeights {
  double d = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  std::vector<double> ratio_coeffs;  // size truncation+1
  std::vector<double> weights;       // size truncation+1, weights[0] == 0

  std::size_t truncation() const { return weights.empty() ? 0 : weights.size() - 1; }
};

LagWeights hygarch_weights(double d, double beta, double gamma, double delta,
                           std::size_t truncation);

/// Sum of |weights[j]| over j = 1..J; diagnostic for truncation-error reporting.
double weight_tail_mass(const LagWeights& weights);

}  // namespace arhyg
