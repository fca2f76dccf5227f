#include "arhygarch/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arhygarch/distributions.hpp"
#include "arhygarch/errors.hpp"
#include "arhygarch/lagpoly.hpp"
#include "arhygarch/rng.hpp"

namespace arhyg {

namespace {
constexpr double kLogVarianceGuard = 50.0;

// Innovation lanes of the replication stream.
constexpr std::uint64_t kLaneZ = 0;
constexpr std::uint64_t kLaneU = 1;
constexpr std::uint64_t kLaneZBurn = 2;
constexpr std::uint64_t kLaneUBurn = 3;
}  // namespace

InterceptSpec make_design(BreakDesign design, std::size_t sample_size) {
  if (sample_size < 3) {
    throw std::domain_error("make_design: sample size must be >= 3");
  }
  switch (design) {
    case BreakDesign::m1:
      return InterceptSpec::step1(sample_size, 0.1);
    case BreakDesign::m2:
      return InterceptSpec::step2(sample_size, 0.1, 0.5);
    case BreakDesign::m3:
      return InterceptSpec::step3(sample_size, 0.1, 0.5, 0.3);
  }
  throw std::logic_error("make_design: unreachable");
}

SimulatedSeries simulate(const SimConfig& cfg) {
  cfg.params.validate();
  if (cfg.sample_size < 1) {
    throw std::domain_error("simulate: sample size must be >= 1");
  }
  if (cfg.truncation < 1) {
    throw std::domain_error("simulate: truncation must be >= 1");
  }
  if (cfg.intercept.sample_size != cfg.sample_size) {
    throw std::domain_error("simulate: intercept spec sized for a different T");
  }

  const ModelParams& p = cfg.params;
  const std::size_t T = cfg.sample_size;
  const std::size_t m = cfg.burn_in;
  const std::size_t J = cfg.truncation;
  const LagWeights lags = hygarch_weights(p.d, p.beta, p.gamma, p.delta, J);

  RngStream base(cfg.seed, cfg.stream_id);
  RngStream z_stream = base.lane_stream(kLaneZ);
  RngStream u_stream = base.lane_stream(kLaneU);

  // Burn-in innovations are indexed backward from t = 0: draw index -t. Draws
  // come out of the lanes in index order and are consumed reversed so two runs
  // with different burn_in agree on the steps nearest the retained sample.
  std::vector<double> z_burn(m), u_burn(m);
  {
    RngStream zb = base.lane_stream(kLaneZBurn);
    RngStream ub = base.lane_stream(kLaneUBurn);
    for (std::size_t i = 0; i < m; ++i) {
      z_burn[i] = std_t_sample(zb, p.nu);
      u_burn[i] = normal_sample(ub, p.sigma_u2);
    }
  }

  // log_x[pos] holds log x at time t = pos - J - m + 1; pos < J is presample.
  std::vector<double> log_x(J + m + T, p.omega0);

  SimulatedSeries out;
  out.r.reserve(T);
  out.x.reserve(T);
  out.h.reserve(T);
  out.z.reserve(T);
  out.u.reserve(T);

  for (std::size_t pos = J; pos < log_x.size(); ++pos) {
    const long long t = static_cast<long long>(pos) - static_cast<long long>(J + m) + 1;

    const std::size_t t_clamped =
        t < 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(t), T);
    double log_h = intercept_at(cfg.intercept, t_clamped, p.omega0);
    const double* past = log_x.data() + pos;
    for (std::size_t j = 1; j <= J; ++j) {
      log_h += lags.weights[j] * past[-static_cast<std::ptrdiff_t>(j)];
    }
    if (!(std::abs(log_h) <= kLogVarianceGuard)) {
      throw numeric_error("simulate: |log h| exceeded " +
                          std::to_string(kLogVarianceGuard) + " at t = " +
                          std::to_string(t) + " (explosive parameterization)");
    }

    double z, u;
    if (t >= 1) {
      z = std_t_sample(z_stream, p.nu);
      u = normal_sample(u_stream, p.sigma_u2);
    } else {
      z = z_burn[static_cast<std::size_t>(-t)];
      u = u_burn[static_cast<std::size_t>(-t)];
    }

    const double lx = p.xi + p.phi * log_h + leverage(p, z) + u;
    log_x[pos] = lx;

    if (t >= 1) {
      const double h = std::exp(log_h);
      out.h.push_back(h);
      out.z.push_back(z);
      out.u.push_back(u);
      out.r.push_back(std::sqrt(h) * z);
      out.x.push_back(std::exp(lx));
    }
  }
  return out;
}

}  // namespace arhyg
