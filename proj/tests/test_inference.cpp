#include "arhygarch/inference.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "arhygarch/errors.hpp"
#include "arhygarch/rng.hpp"
#include "arhygarch/simulate.hpp"
#include "doctest.h"
#include "oracles.hpp"

using arhyg::estimate;
using arhyg::EstimationResult;
using arhyg::filter_volatility;
using arhyg::FilterOutput;
using arhyg::InterceptSpec;
using arhyg::loglik;
using arhyg::loglik_parts;
using arhyg::ModelParams;
using arhyg::OptimizerOptions;
using arhyg::profile_loglik_d;
using arhyg::SeriesPair;
using arhyg::SimConfig;
using arhyg::simulate;
using arhyg::SimulatedSeries;

namespace {

ModelParams baseline(double d) {
  ModelParams p;
  p.d = d;
  return p;
}

SimulatedSeries simulate_baseline(double d, std::size_t T, std::size_t J,
                                  std::uint64_t seed, std::uint64_t stream = 0) {
  SimConfig cfg;
  cfg.params = baseline(d);
  cfg.intercept = InterceptSpec::fourier(T);
  cfg.sample_size = T;
  cfg.burn_in = 1000;
  cfg.truncation = J;
  cfg.seed = seed;
  cfg.stream_id = stream;
  return simulate(cfg);
}

SeriesPair to_series(const SimulatedSeries& path) { return SeriesPair{path.r, path.x}; }

// Random positive series used by the oracle comparisons.
SeriesPair random_series(arhyg::RngStream& rng, std::size_t T) {
  SeriesPair s;
  s.r.resize(T);
  s.x.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    s.r[t] = rng.normal();
    s.x[t] = std::exp(0.5 * rng.normal());
  }
  return s;
}

}  // namespace

TEST_CASE("filter with vanishing weights returns the constant intercept") {
  SeriesPair s;
  s.r = {0.1, -0.2, 0.3, 0.0, 0.05};
  s.x = {1.0, 1.2, 0.8, 1.1, 0.9};
  ModelParams p = baseline(0.0);
  p.gamma = p.beta = 0.4;
  const InterceptSpec spec = InterceptSpec::fourier(5);
  const FilterOutput out = filter_volatility(s, p, spec, 3);
  for (double lh : out.log_h) CHECK(lh == p.omega0);
}

TEST_CASE("filter recovers the true variance path on simulated data") {
  const SimulatedSeries path = simulate_baseline(0.35, 3000, 3000, 11);
  const SeriesPair s = to_series(path);
  const ModelParams p = baseline(0.35);
  const InterceptSpec spec = InterceptSpec::fourier(3000);
  const FilterOutput out = filter_volatility(s, p, spec, 3000);
  double max_err = 0.0;
  for (std::size_t t = 1500; t < 3000; ++t) {
    max_err = std::max(max_err, std::abs(out.log_h[t] - std::log(path.h[t])));
  }
  CHECK(max_err < 1e-2);
}

TEST_CASE("order-zero fourier run equals explicit zero harmonics") {
  const SimulatedSeries path = simulate_baseline(0.3, 300, 200, 5);
  const SeriesPair s = to_series(path);
  ModelParams p0 = baseline(0.3);
  ModelParams p1 = baseline(0.3);
  p1.fourier_a = {0.0};
  p1.fourier_b = {0.0};
  const FilterOutput f0 =
      filter_volatility(s, p0, InterceptSpec::fourier(300), 200);
  const FilterOutput f1 = filter_volatility(
      s, p1, InterceptSpec::fourier(300, {0.0}, {0.0}), 200);
  for (std::size_t t = 0; t < 300; ++t) {
    CHECK(f0.log_h[t] == f1.log_h[t]);
    CHECK(f0.u[t] == f1.u[t]);
  }
}

TEST_CASE("filter rejects nonpositive realized measures") {
  SeriesPair s;
  s.r = {0.1, 0.2};
  s.x = {1.0, 0.0};
  CHECK_THROWS_AS(
      filter_volatility(s, baseline(0.3), InterceptSpec::fourier(2), 2),
      arhyg::data_error);
}

TEST_CASE("single-observation likelihood matches the analytic value") {
  SeriesPair s;
  s.r = {0.0};
  s.x = {1.0};
  ModelParams p = baseline(0.3);
  p.omega0 = 0.0;
  p.tau1 = p.tau2 = 0.0;
  p.sigma_u2 = 1.0;
  p.nu = 3.0;
  const double value = loglik(s, p, InterceptSpec::fourier(1), 5);
  // log(2/pi) - log(2 pi)/2
  CHECK(value == doctest::Approx(-1.3705212385101276).epsilon(1e-9));
  const auto parts = loglik_parts(s, p, InterceptSpec::fourier(1), 5);
  CHECK(parts.return_part + parts.measurement_part == doctest::Approx(value));
  CHECK(parts.return_part == doctest::Approx(-0.45158270528945482).epsilon(1e-9));
  CHECK(parts.measurement_part == doctest::Approx(-0.91893853320467274).epsilon(1e-9));
}

TEST_CASE("likelihood matches the straight-line oracle on random series") {
  arhyg::RngStream rng(808);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t T = 50;
    const SeriesPair s = random_series(rng, T);
    ModelParams p;
    p.omega0 = 0.4 * (rng.uniform() - 0.5);
    p.gamma = 0.6 * rng.uniform();
    p.beta = 0.6 * rng.uniform();
    p.d = 0.05 + 0.85 * rng.uniform();
    p.delta = 0.5 + rng.uniform();
    p.nu = 3.0 + 5.0 * rng.uniform();
    p.xi = 0.2 * (rng.uniform() - 0.5);
    p.phi = 0.8 + 0.4 * rng.uniform();
    p.tau1 = 0.1 * (rng.uniform() - 0.5);
    p.tau2 = 0.1 * rng.uniform();
    p.sigma_u2 = 0.2 + rng.uniform();
    const bool with_harmonics = rep % 2 == 0;
    if (with_harmonics) {
      p.fourier_a = {0.05};
      p.fourier_b = {-0.03};
    }
    const std::size_t J = 30;

    std::vector<double> omega(T);
    for (std::size_t t = 1; t <= T; ++t) {
      double w = p.omega0;
      if (with_harmonics) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) /
                             static_cast<double>(T);
        w += p.fourier_a[0] * std::sin(angle) + p.fourier_b[0] * std::cos(angle);
      }
      omega[t - 1] = w;
    }
    const double expected = oracles::straight_line_loglik(
        s.r, s.x, omega, p.gamma, p.beta, p.d, p.delta, p.nu, p.xi, p.phi, p.tau1,
        p.tau2, p.sigma_u2, J);
    const InterceptSpec spec =
        InterceptSpec::fourier(T, p.fourier_a, p.fourier_b);
    CHECK(loglik(s, p, spec, J) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("out-of-domain parameters hit the likelihood floor") {
  SeriesPair s;
  s.r = {0.1, 0.2, -0.1};
  s.x = {1.0, 1.1, 0.9};
  ModelParams p = baseline(0.3);
  p.nu = 1.5;
  CHECK(loglik(s, p, InterceptSpec::fourier(3), 2) == arhyg::kLogLikFloor);
  p = baseline(0.3);
  p.beta = 1.2;
  CHECK(loglik(s, p, InterceptSpec::fourier(3), 2) == arhyg::kLogLikFloor);
}

TEST_CASE("profile over a d grid") {
  const SimulatedSeries path = simulate_baseline(0.45, 3000, 3000, 17);
  const SeriesPair s = to_series(path);
  const ModelParams p = baseline(0.45);
  const InterceptSpec spec = InterceptSpec::fourier(3000);

  const std::vector<double> single{0.37};
  const auto one = profile_loglik_d(s, p, spec, 3000, single);
  REQUIRE(one.size() == 1);
  ModelParams p37 = p;
  p37.d = 0.37;
  CHECK(one[0].second == loglik(s, p37, spec, 3000));

  std::vector<double> grid;
  for (double d = 0.25; d < 0.659; d += 0.05) grid.push_back(d);
  const auto prof = profile_loglik_d(s, p, spec, 3000, grid);
  REQUIRE(prof.size() == grid.size());
  double best_d = 0.0, best_ll = -1e308;
  for (const auto& [d, ll] : prof) {
    if (ll > best_ll) {
      best_ll = ll;
      best_d = d;
    }
  }
  CHECK(std::abs(best_d - 0.45) <= 0.1);
}

TEST_CASE("central-difference gradient shows Richardson error decay") {
  const SimulatedSeries path = simulate_baseline(0.4, 200, 150, 23);
  const SeriesPair s = to_series(path);
  const InterceptSpec spec = InterceptSpec::fourier(200);
  ModelParams p = baseline(0.4);
  p.d = 0.37;  // interior point away from the optimum

  auto grad_d = [&](double h) {
    ModelParams hi = p, lo = p;
    hi.d += h;
    lo.d -= h;
    return (loglik(s, hi, spec, 150) - loglik(s, lo, spec, 150)) / (2.0 * h);
  };
  const double h = 2e-3;
  const double g1 = grad_d(h);
  const double g2 = grad_d(h / 2.0);
  const double g3 = grad_d(h / 4.0);
  const double ratio = (g1 - g2) / (g2 - g3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("estimation recovers d on a long simulated path") {
  const SimulatedSeries path = simulate_baseline(0.45, 3000, 3000, 2);
  const SeriesPair s = to_series(path);
  OptimizerOptions opt;
  opt.truncation = 3000;
  opt.compute_se = true;
  const EstimationResult fit = estimate(s, 0, opt);
  CHECK(std::abs(fit.theta_hat.d - 0.45) <= 0.25);
  CHECK(fit.iterations > 0);

  // Reported value must be self-consistent with a fresh evaluation.
  const InterceptSpec spec = InterceptSpec::fourier(3000);
  CHECK(fit.loglik ==
        doctest::Approx(loglik(s, fit.theta_hat, spec, 3000)).epsilon(1e-8));
}

TEST_CASE("estimation is deterministic for fixed options") {
  const SimulatedSeries path = simulate_baseline(0.35, 400, 200, 77);
  const SeriesPair s = to_series(path);
  OptimizerOptions opt;
  opt.truncation = 200;
  opt.starts = 2;
  opt.max_evals = 1500;
  opt.compute_se = false;
  const EstimationResult a = estimate(s, 0, opt);
  const EstimationResult b = estimate(s, 0, opt);
  CHECK(a.loglik == b.loglik);
  CHECK(a.theta_hat.d == b.theta_hat.d);
  CHECK(a.theta_hat.beta == b.theta_hat.beta);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("warm-started richer model attains at least the restricted optimum") {
  const SimulatedSeries path = simulate_baseline(0.35, 400, 200, 91);
  const SeriesPair s = to_series(path);
  OptimizerOptions opt;
  opt.truncation = 200;
  opt.starts = 1;
  opt.max_evals = 1500;
  opt.compute_se = false;
  const EstimationResult k0 = estimate(s, 0, opt);

  OptimizerOptions warm = opt;
  warm.warm_start = k0.theta_hat;
  const EstimationResult k1 = estimate(s, 1, warm);
  CHECK(k1.loglik >= k0.loglik - 1e-6);
}

TEST_CASE("estimate refuses series shorter than the documented floor") {
  SeriesPair s;
  s.r.assign(50, 0.01);
  s.x.assign(50, 1.0);
  CHECK_THROWS_AS(estimate(s, 0, OptimizerOptions{}), arhyg::data_error);
}
