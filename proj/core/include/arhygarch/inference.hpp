#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arhygarch/model.hpp"

namespace arhyg {

/// Aligned observed returns and realized measures, t = 1..T.
struct SeriesPair {
  std::vector<double> r;
  std::vector<double> x;

  std::size_t size() const { return r.size(); }
};

/// Output of the volatility filter on observed data.
struct FilterOutput {
  std::vector<double> log_h;
  std::vector<double> z;  // r_t / sqrt(h_t)
  std::vector<double> u;  // measurement residuals
  std::size_t truncation = 0;
  double presample_fill = 0.0;  // sample mean of log x
};

/// log h_t = omega_t + sum_{j=1..J} w_j log x_{t-j}, presample log x replaced
/// by the sample mean of log x. Throws arhyg::data_error on x <= 0 or
/// non-finite input.
FilterOutput filter_volatility(const SeriesPair& series, const ModelParams& params,
                               const InterceptSpec& spec, std::size_t truncation);

/// Likelihood value used for parameter points outside the hard domain, so
/// derivative-free searches can back out of bad regions.
inline constexpr double kLogLikFloor = -1e300;

struct LogLikParts {
  double return_part = 0.0;       // Student-t conditional term
  double measurement_part = 0.0;  // Gaussian measurement term

  double total() const { return return_part + measurement_part; }
};

/// Joint log-likelihood of returns and realized measures; the two labeled
/// parts are exposed separately. Returns kLogLikFloor (in return_part) for
/// parameter values breaching hard domain constraints.
LogLikParts loglik_parts(const SeriesPair& series, const ModelParams& params,
                         const InterceptSpec& spec, std::size_t truncation);

double loglik(const SeriesPair& series, const ModelParams& params,
              const InterceptSpec& spec, std::size_t truncation);

/// loglik along a grid of d values, other parameters held fixed.
std::vector<std::pair<double, double>> profile_loglik_d(
    const SeriesPair& series, const ModelParams& params, const InterceptSpec& spec,
    std::size_t truncation, const std::vector<double>& d_grid);

struct OptimizerOptions {
  int starts = 2;              // multi-start count; best final value wins
  int restarts = 2;            // simplex reinitializations per start
  int max_evals = 4000;        // function-evaluation budget per simplex run
  double f_tol = 1e-8;         // simplex spread stopping threshold
  std::size_t truncation = 3000;
  bool compute_se = true;      // numerical-Hessian standard errors at the optimum
  bool profile_d_init = true;  // coarse d-grid scan to seed the first start
  std::uint64_t seed = 0;      // jitter key for starts beyond the built-in ones
  std::optional<ModelParams> warm_start;  // extra user-supplied starting point
};

struct EstimationResult {
  ModelParams theta_hat;
  double loglik = 0.0;
  std::optional<std::vector<double>> std_errors;  // absent if Hessian not PD
  bool converged = false;
  std::size_t iterations = 0;  // total function evaluations
  std::size_t fourier_order = 0;
};

/// Quasi-maximum-likelihood fit of the (1,d,1,k) model by multi-start
/// Nelder-Mead in an unconstrained reparameterization (logit for d, beta,
/// gamma; log for delta, nu - 2.1, sigma_u2; identity elsewhere).
EstimationResult estimate(const SeriesPair& series, std::size_t fourier_order,
                          const OptimizerOptions& options = {});

/// Parameter order used by the transformed search space and the Hessian:
/// omega0, gamma, beta, d, delta, nu, xi, phi, tau1, tau2, sigma_u2,
/// a_1..a_k, b_1..b_k.
std::vector<double> pack_params(const ModelParams& params);
ModelParams unpack_params(const std::vector<double>& theta, std::size_t fourier_order);

}  // namespace arhyg
