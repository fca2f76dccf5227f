#include "arhygarch/model.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "arhygarch/errors.hpp"
#include "arhygarch/lagpoly.hpp"

namespace arhyg {

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
  };
  require(std::isfinite(omega0), "omega0 must be finite");
  require(std::abs(gamma) < 1.0, "gamma must lie in (-1, 1)");
  require(std::abs(beta) < 1.0, "beta must lie in (-1, 1)");
  require(d >= 0.0 && d < 1.0, "d must lie in [0, 1)");
  require(delta > 0.0, "delta must be positive");
  require(nu > 2.0, "nu must exceed 2");
  require(std::isfinite(xi), "xi must be finite");
  require(std::isfinite(phi), "phi must be finite");
  require(std::isfinite(tau1) && std::isfinite(tau2), "tau1, tau2 must be finite");
  require(sigma_u2 > 0.0, "sigma_u2 must be positive");
  require(fourier_a.size() == fourier_b.size(),
          "fourier_a and fourier_b must have equal length");
}

InterceptSpec InterceptSpec::fourier(std::size_t sample_size, std::vector<double> a,
                                     std::vector<double> b) {
  if (a.size() != b.size()) {
    throw std::domain_error("InterceptSpec::fourier: a and b must have equal length");
  }
  InterceptSpec spec;
  spec.kind = Kind::fourier;
  spec.sample_size = sample_size;
  spec.a = std::move(a);
  spec.b = std::move(b);
  return spec;
}

InterceptSpec InterceptSpec::step1(std::size_t sample_size, double omega) {
  InterceptSpec spec;
  spec.kind = Kind::step_m1;
  spec.sample_size = sample_size;
  spec.levels = {omega, omega, omega};
  return spec;
}

InterceptSpec InterceptSpec::step2(std::size_t sample_size, double omega_low,
                                   double omega_high) {
  InterceptSpec spec;
  spec.kind = Kind::step_m2;
  spec.sample_size = sample_size;
  spec.levels = {omega_low, omega_high, omega_high};
  return spec;
}

InterceptSpec InterceptSpec::step3(std::size_t sample_size, double omega1, double omega2,
                                   double omega3) {
  InterceptSpec spec;
  spec.kind = Kind::step_m3;
  spec.sample_size = sample_size;
  spec.levels = {omega1, omega2, omega3};
  return spec;
}

double intercept_at(const InterceptSpec& spec, std::size_t t, double omega0) {
  if (t < 1 || t > spec.sample_size) {
    throw std::out_of_range("intercept_at: t must lie in 1..T");
  }
  switch (spec.kind) {
    case InterceptSpec::Kind::fourier: {
      double omega = omega0;
      const double scale = 2.0 * std::numbers::pi * static_cast<double>(t) /
                           static_cast<double>(spec.sample_size);
      for (std::size_t j = 0; j < spec.a.size(); ++j) {
        const double angle = scale * static_cast<double>(j + 1);
        omega += spec.a[j] * std::sin(angle) + spec.b[j] * std::cos(angle);
      }
      return omega;
    }
    case InterceptSpec::Kind::step_m1:
      return spec.levels[0];
    case InterceptSpec::Kind::step_m2:
      return t <= spec.sample_size / 2 ? spec.levels[0] : spec.levels[1];
    case InterceptSpec::Kind::step_m3: {
      if (t <= spec.sample_size / 3) return spec.levels[0];
      if (t <= 2 * spec.sample_size / 3) return spec.levels[1];
      return spec.levels[2];
    }
  }
  throw std::logic_error("intercept_at: unreachable");
}

InterceptBounds intercept_bounds(double omega0, std::span<const double> a,
                                 std::span<const double> b) {
  double harmonic_mass = 0.0;
  for (double v : a) harmonic_mass += std::abs(v);
  for (double v : b) harmonic_mass += std::abs(v);

  InterceptBounds out;
  out.certified = harmonic_mass <= std::min(1.0, omega0);
  out.lower = 0.0;
  out.upper = omega0 + 2.0;
  return out;
}

namespace {

// The absolute series S = sum_{j>=0} |pi_{j+2} - gamma pi_{j+1}| with signed
// pi_j from the fractional expansion (pi_1 = -d). The direct sum runs to a
// point where consecutive coefficient magnitudes decay slower than gamma;
// beyond it every term has one sign and the remainder telescopes to
// R(J+3) - gamma R(J+2), with R(K) = sum_{k>=K} |pi_k| available exactly as
// the signed partial sum s_{K-1} (the series sums to zero for d > 0).
struct AbsSeries {
  double total = 0.0;        // S including the analytic tail
  double beyond_user = 0.0;  // portion past the user's truncation
};

AbsSeries abs_weight_series(double d, double gamma, std::size_t truncation) {
  std::size_t extended = truncation;
  if (gamma > 0.0) {
    const double needed = (3.0 * gamma - 2.0 + d) / (1.0 - gamma);
    if (needed > static_cast<double>(extended)) {
      extended = static_cast<std::size_t>(needed) + 1;
    }
  }

  const FracDiffCoeffs frac = fracdiff_coeffs(d, extended + 2);
  AbsSeries out;
  double direct_user = 0.0;
  double direct_all = 0.0;
  for (std::size_t j = 0; j <= extended; ++j) {
    const double term = std::abs(frac.coeffs[j + 2] - gamma * frac.coeffs[j + 1]);
    direct_all += term;
    if (j <= truncation) direct_user += term;
  }

  double tail = 0.0;
  if (d > 0.0) {
    double s = 1.0;  // s_n = sum_{j<=n} pi_j, via s_n = s_{n-1} (n-d)/n
    double s_prev = 1.0;
    for (std::size_t n = 1; n <= extended + 2; ++n) {
      s_prev = s;
      s *= (static_cast<double>(n) - d) / static_cast<double>(n);
    }
    tail = s - gamma * s_prev;  // R(extended+3) - gamma R(extended+2)
  }

  out.total = direct_all + tail;
  out.beyond_user = out.total - direct_user;
  return out;
}

struct StabilityCore {
  double a = 0.0;       // phi delta |beta - gamma + pi_1|
  double b = 0.0;       // |beta delta|
  double c = 0.0;       // phi delta S
  double series = 0.0;  // S
  double beyond_user = 0.0;
};

StabilityCore stability_core(const ModelParams& p, std::size_t truncation) {
  if (!(std::abs(p.beta) < 1.0)) {
    throw std::domain_error("stability_check: |beta| must be < 1");
  }
  if (!(p.d >= 0.0 && p.d < 1.0)) {
    throw std::domain_error("stability_check: d must lie in [0, 1)");
  }
  const AbsSeries series = abs_weight_series(p.d, p.gamma, truncation);
  StabilityCore core;
  core.series = series.total;
  core.beyond_user = series.beyond_user;
  core.a = p.phi * p.delta * std::abs(p.beta - p.gamma - p.d);  // pi_1 = -d
  core.b = std::abs(p.beta * p.delta);
  core.c = p.phi * p.delta * series.total;
  return core;
}

std::array<double, 3> solve_moment_bound(const ModelParams& p, const StabilityCore& core) {
  const double c0 = p.omega0 + 2.0;
  const double f0 = c0 * (1.0 - std::abs(p.beta)) +
                    p.xi * p.delta * std::abs(p.beta - p.gamma - p.d) +
                    p.xi * p.delta * core.series;
  const double f1 = f0 / p.delta;

  Eigen::Matrix3d B;
  B << core.a, core.b, core.c,
      core.a / p.delta, core.b / p.delta, core.c / p.delta,
      1.0, 0.0, 0.0;
  const Eigen::Vector3d M(f0, f1, 0.0);
  const Eigen::Vector3d H = (Eigen::Matrix3d::Identity() - B).fullPivLu().solve(M);
  return {H(0), H(1), H(2)};
}

}  // namespace

StabilityReport stability_check(const ModelParams& params, std::size_t truncation) {
  const StabilityCore core = stability_core(params, truncation);

  StabilityReport report;
  report.weight_sum_abs = core.series;
  report.truncation_error = core.beyond_user;
  report.condition2 = core.a + std::abs(params.beta);
  report.condition1 = report.condition2 + core.c - 1.0;
  report.certified = report.condition1 <= 0.0 && report.condition2 <= 2.0;

  const double s = core.a + core.b / params.delta;
  report.rho_closed_form = 0.5 * (s + std::sqrt(s * s + 4.0 * core.c));

  Eigen::Matrix3d B;
  B << core.a, core.b, core.c,
      core.a / params.delta, core.b / params.delta, core.c / params.delta,
      1.0, 0.0, 0.0;
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(B);
  double rho = 0.0;
  for (int i = 0; i < 3; ++i) {
    rho = std::max(rho, std::abs(solver.eigenvalues()(i)));
  }
  report.rho_numeric = rho;

  if (report.rho_closed_form < 1.0) {
    report.moment_bound = solve_moment_bound(params, core);
  }
  return report;
}

std::array<double, 3> moment_bound(const ModelParams& params, std::size_t truncation) {
  const StabilityCore core = stability_core(params, truncation);
  const double s = core.a + core.b / params.delta;
  const double rho = 0.5 * (s + std::sqrt(s * s + 4.0 * core.c));
  if (!(rho < 1.0)) {
    throw numeric_error("moment_bound: spectral radius >= 1, bound diverges");
  }
  return solve_moment_bound(params, core);
}

}  // namespace arhyg
