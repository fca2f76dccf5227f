#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace arhyg {

/// Full parameter vector of the adaptive realized hyperbolic GARCH(1,d,1,k)
/// model. Defaults are the baseline used throughout the simulation studies.
struct ModelParams {
  double omega0 = 0.1;   // intercept level
  double gamma = 0.1;    // MA-side lag coefficient
  double beta = 0.4;     // AR-side lag coefficient
  double d = 0.35;       // long-memory parameter, in (0, 1)
  double delta = 0.9;    // hyperbolic amplification
  double nu = 3.0;       // Student-t degrees of freedom, > 2
  double xi = 0.0;       // measurement-equation intercept
  double phi = 1.0;      // measurement-equation loading on log h
  double tau1 = -0.08;   // leverage, linear term
  double tau2 = 0.06;    // leverage, quadratic term
  double sigma_u2 = 0.4; // measurement noise variance, > 0
  std::vector<double> fourier_a;  // sine coefficients, size k
  std::vector<double> fourier_b;  // cosine coefficients, size k

  std::size_t fourier_order() const { return fourier_a.size(); }

  /// Throws std::domain_error on any range violation.
  void validate() const;
};

/// Leverage function tau(z) = tau1 * z + tau2 * (z^2 - 1).
inline double leverage(const ModelParams& p, double z) {
  return p.tau1 * z + p.tau2 * (z * z - 1.0);
}

/// Time-varying intercept omega_t over t = 1..T: either the flexible Fourier
/// form omega0 + sum_j [a_j sin(2 pi j t / T) + b_j cos(2 pi j t / T)] or one
/// of the three step-break designs. Step changes land at floor(T/2)+1 for the
/// single break and at floor(T/3)+1, floor(2T/3)+1 for the double break.
struct InterceptSpec {
  enum class Kind { fourier, step_m1, step_m2, step_m3 };

  Kind kind = Kind::fourier;
  std::size_t sample_size = 0;  // T
  std::vector<double> a, b;     // fourier only
  std::array<double, 3> levels{0.0, 0.0, 0.0};  // step designs

  static InterceptSpec fourier(std::size_t sample_size, std::vector<double> a = {},
                               std::vector<double> b = {});
  static InterceptSpec step1(std::size_t sample_size, double omega);
  static InterceptSpec step2(std::size_t sample_size, double omega_low, double omega_high);
  static InterceptSpec step3(std::size_t sample_size, double omega1, double omega2,
                             double omega3);
};

/// omega_t for t in 1..T; omega0 enters only the fourier variant.
/// Throws std::out_of_range for t outside 1..T.
double intercept_at(const InterceptSpec& spec, std::size_t t, double omega0);

struct InterceptBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
};

/// Certified bound 0 <= omega_t <= omega0 + 2 whenever
/// sum_j (|a_j| + |b_j|) <= min(1, omega0).
InterceptBounds intercept_bounds(double omega0, std::span<const double> a,
                                 std::span<const double> b);

/// Second-moment stability diagnostics.
///
/// condition1 and condition2 are the two sufficient-condition quantities
/// (certified when condition1 <= 0 and condition2 <= 2); rho_* are the
/// spectral radius of the 3x3 companion matrix, once in closed form and once
/// from a numerical eigensolver. weight_sum_abs is the absolute series
/// sum_{j>=0} |pi_{j+2} - gamma pi_{j+1}| including its closed-form tail;
/// truncation_error is the tail mass beyond the requested truncation that the
/// closed form supplied (what a bare truncated sum would have missed).
struct StabilityReport {
  double condition1 = 0.0;
  double condition2 = 0.0;
  double rho_closed_form = 0.0;
  double rho_numeric = 0.0;
  bool certified = false;
  double weight_sum_abs = 0.0;
  double truncation_error = 0.0;
  std::optional<std::array<double, 3>> moment_bound;  // present when rho < 1
};

StabilityReport stability_check(const ModelParams& params, std::size_t truncation);

/// Asymptotic upper bound (I - B)^{-1} M on (E log h_t, E log h_{1,t},
/// E log h_{t-1}). Throws arhyg::numeric_error when the spectral radius is >= 1.
std::array<double, 3> moment_bound(const ModelParams& params, std::size_t truncation);

}  // namespace arhyg
