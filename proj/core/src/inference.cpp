#include "arhygarch/inference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "arhygarch/distributions.hpp"
#include "arhygarch/errors.hpp"
#include "arhygarch/lagpoly.hpp"
#include "arhygarch/rng.hpp"

namespace arhyg {

namespace {

void check_series(const SeriesPair& series) {
  if (series.r.size() != series.x.size()) {
    throw data_error("series: r and x must have equal length");
  }
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    if (!std::isfinite(series.r[i]) || !std::isfinite(series.x[i])) {
      throw data_error("series: non-finite value at t = " + std::to_string(i + 1));
    }
    if (!(series.x[i] > 0.0)) {
      throw data_error("series: realized measure must be positive at t = " +
                       std::to_string(i + 1));
    }
  }
}

bool in_hard_domain(const ModelParams& p) {
  return std::isfinite(p.omega0) && std::abs(p.gamma) < 1.0 && std::abs(p.beta) < 1.0 &&
         p.d >= 0.0 && p.d < 1.0 && p.delta > 0.0 && p.nu > 2.0 &&
         std::isfinite(p.xi) && std::isfinite(p.phi) && std::isfinite(p.tau1) &&
         std::isfinite(p.tau2) && p.sigma_u2 > 0.0;
}

// Unit-stride dot product with independent accumulators; this loop carries the
// whole T x J filter cost, so it must pipeline.
double dot_forward(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

FilterOutput filter_volatility(const SeriesPair& series, const ModelParams& params,
                               const InterceptSpec& spec, std::size_t truncation) {
  check_series(series);
  params.validate();
  const std::size_t T = series.size();
  if (spec.sample_size != T) {
    throw data_error("filter_volatility: intercept spec sized for a different T");
  }
  if (truncation < 1) {
    throw std::domain_error("filter_volatility: truncation must be >= 1");
  }

  const LagWeights lags =
      hygarch_weights(params.d, params.beta, params.gamma, params.delta, truncation);
  const std::size_t J = truncation;

  std::vector<double> log_x(T);
  double fill = 0.0;
  for (std::size_t i = 0; i < T; ++i) {
    log_x[i] = std::log(series.x[i]);
    fill += log_x[i];
  }
  fill /= static_cast<double>(T);

  // rev[i] = log x_{T-i}, so the lag sum over j becomes a forward dot product
  // of weights[1..] against rev[T-t+1 ..].
  std::vector<double> rev(T);
  for (std::size_t i = 0; i < T; ++i) rev[i] = log_x[T - 1 - i];

  // cum[n] = sum of weights for lags 1..n; lags past the sample head
  // contribute fill * (cum[J] - cum[t-1]).
  std::vector<double> cum(J + 1, 0.0);
  for (std::size_t j = 1; j <= J; ++j) cum[j] = cum[j - 1] + lags.weights[j];

  FilterOutput out;
  out.truncation = J;
  out.presample_fill = fill;
  out.log_h.resize(T);
  out.z.resize(T);
  out.u.resize(T);

  const double* w = lags.weights.data();
  for (std::size_t t = 1; t <= T; ++t) {
    const std::size_t observed = std::min(J, t - 1);
    double acc = dot_forward(w + 1, rev.data() + (T - t) + 1, observed);
    if (observed < J) {
      acc += fill * (cum[J] - cum[observed]);
    }
    const double log_h = intercept_at(spec, t, params.omega0) + acc;
    const double z = series.r[t - 1] * std::exp(-0.5 * log_h);
    out.log_h[t - 1] = log_h;
    out.z[t - 1] = z;
    out.u[t - 1] = log_x[t - 1] - params.xi - params.phi * log_h - leverage(params, z);
  }
  return out;
}

LogLikParts loglik_parts(const SeriesPair& series, const ModelParams& params,
                         const InterceptSpec& spec, std::size_t truncation) {
  LogLikParts parts;
  if (!in_hard_domain(params)) {
    parts.return_part = kLogLikFloor;
    return parts;
  }

  const FilterOutput filt = filter_volatility(series, params, spec, truncation);
  const std::size_t T = series.size();

  const double nu = params.nu;
  const double a_nu = std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1.0));
  const double t_const = -a_nu - 0.5 * std::log(std::numbers::pi * (nu - 2.0));
  const double g_const =
      -0.5 * (std::log(2.0 * std::numbers::pi) + std::log(params.sigma_u2));
  const double inv_su2 = 1.0 / params.sigma_u2;

  double ret = 0.0;
  double meas = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const double z = filt.z[t];
    ret += t_const - 0.5 * filt.log_h[t] -
           0.5 * (nu + 1.0) * std::log1p(z * z / (nu - 2.0));
    const double u = filt.u[t];
    meas += g_const - 0.5 * u * u * inv_su2;
  }

  if (!std::isfinite(ret) || !std::isfinite(meas)) {
    parts.return_part = kLogLikFloor;
    parts.measurement_part = 0.0;
    return parts;
  }
  parts.return_part = ret;
  parts.measurement_part = meas;
  return parts;
}

double loglik(const SeriesPair& series, const ModelParams& params,
              const InterceptSpec& spec, std::size_t truncation) {
  return loglik_parts(series, params, spec, truncation).total();
}

std::vector<std::pair<double, double>> profile_loglik_d(
    const SeriesPair& series, const ModelParams& params, const InterceptSpec& spec,
    std::size_t truncation, const std::vector<double>& d_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(d_grid.size());
  ModelParams p = params;
  for (double d : d_grid) {
    p.d = d;
    out.emplace_back(d, loglik(series, p, spec, truncation));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameter packing and the unconstrained search space
// ---------------------------------------------------------------------------

std::vector<double> pack_params(const ModelParams& params) {
  std::vector<double> theta;
  theta.reserve(11 + 2 * params.fourier_order());
  theta.push_back(params.omega0);
  theta.push_back(params.gamma);
  theta.push_back(params.beta);
  theta.push_back(params.d);
  theta.push_back(params.delta);
  theta.push_back(params.nu);
  theta.push_back(params.xi);
  theta.push_back(params.phi);
  theta.push_back(params.tau1);
  theta.push_back(params.tau2);
  theta.push_back(params.sigma_u2);
  for (double v : params.fourier_a) theta.push_back(v);
  for (double v : params.fourier_b) theta.push_back(v);
  return theta;
}

ModelParams unpack_params(const std::vector<double>& theta, std::size_t fourier_order) {
  if (theta.size() != 11 + 2 * fourier_order) {
    throw std::domain_error("unpack_params: wrong vector length");
  }
  ModelParams p;
  p.omega0 = theta[0];
  p.gamma = theta[1];
  p.beta = theta[2];
  p.d = theta[3];
  p.delta = theta[4];
  p.nu = theta[5];
  p.xi = theta[6];
  p.phi = theta[7];
  p.tau1 = theta[8];
  p.tau2 = theta[9];
  p.sigma_u2 = theta[10];
  p.fourier_a.assign(theta.begin() + 11, theta.begin() + 11 + fourier_order);
  p.fourier_b.assign(theta.begin() + 11 + fourier_order, theta.end());
  return p;
}

namespace {

// Bounded coordinates are searched through smooth bijections onto the real
// line: logit for gamma, beta in (0, 0.999) and d in (0.01, 0.99); log-scale
// logit for delta in (0.05, 5); shifted log for nu > 2.1 and
// sigma_u2 > 1e-8. Everything else is searched as-is.
enum class Map { identity, logit, log_logit, shifted_log };

struct CoordMap {
  Map map = Map::identity;
  double lo = 0.0;
  double hi = 0.0;
};

std::vector<CoordMap> coordinate_maps(std::size_t fourier_order) {
  std::vector<CoordMap> maps(11 + 2 * fourier_order);
  maps[1] = {Map::logit, 0.0, 0.999};                        // gamma
  maps[2] = {Map::logit, 0.0, 0.999};                        // beta
  maps[3] = {Map::logit, 0.01, 0.99};                        // d
  maps[4] = {Map::log_logit, std::log(0.05), std::log(5.0)}; // delta
  maps[5] = {Map::shifted_log, 2.1, 0.0};                    // nu
  maps[10] = {Map::shifted_log, 1e-8, 0.0};                  // sigma_u2
  return maps;
}

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double to_natural(double u, const CoordMap& m) {
  switch (m.map) {
    case Map::identity:
      return u;
    case Map::logit:
      return m.lo + (m.hi - m.lo) * sigmoid(u);
    case Map::log_logit:
      return std::exp(m.lo + (m.hi - m.lo) * sigmoid(u));
    case Map::shifted_log:
      return m.lo + std::exp(u);
  }
  return u;
}

double to_unconstrained(double x, const CoordMap& m) {
  constexpr double kMargin = 1e-6;
  switch (m.map) {
    case Map::identity:
      return x;
    case Map::logit: {
      const double span = m.hi - m.lo;
      const double p = std::clamp((x - m.lo) / span, kMargin, 1.0 - kMargin);
      return std::log(p / (1.0 - p));
    }
    case Map::log_logit: {
      const double span = m.hi - m.lo;
      const double p = std::clamp((std::log(x) - m.lo) / span, kMargin, 1.0 - kMargin);
      return std::log(p / (1.0 - p));
    }
    case Map::shifted_log:
      return std::log(std::max(x - m.lo, 1e-8));
  }
  return x;
}

std::vector<double> natural_point(const std::vector<double>& u,
                                  const std::vector<CoordMap>& maps) {
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = to_natural(u[i], maps[i]);
  return x;
}

std::vector<double> unconstrained_point(const std::vector<double>& x,
                                        const std::vector<CoordMap>& maps) {
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = to_unconstrained(x[i], maps[i]);
  return u;
}

// ---------------------------------------------------------------------------
// Nelder-Mead with the dimension-adaptive expansion/contraction/shrink
// coefficients of Gao & Han. Fully deterministic.
// ---------------------------------------------------------------------------

struct SimplexResult {
  std::vector<double> best;
  double f_best = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;
  bool converged = false;
};

template <typename F>
SimplexResult nelder_mead(F&& objective, const std::vector<double>& start,
                          const std::vector<double>& steps, int max_evals,
                          double f_tol) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> xs(n + 1, start);
  std::vector<double> fs(n + 1);
  SimplexResult result;

  for (std::size_t i = 1; i <= n; ++i) xs[i][i - 1] += steps[i - 1];
  for (std::size_t i = 0; i <= n; ++i) {
    fs[i] = objective(xs[i]);
    ++result.evals;
  }

  const double alpha = 1.0;
  const double beta_e = 1.0 + 2.0 / static_cast<double>(n);
  const double gamma_c = 0.75 - 0.5 / static_cast<double>(n);
  const double delta_s = 1.0 - 1.0 / static_cast<double>(n);

  std::vector<std::size_t> order(n + 1);
  auto sort_order = [&]() {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  };

  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (result.evals < static_cast<std::size_t>(max_evals)) {
    sort_order();
    const std::size_t lo = order[0];
    const std::size_t hi = order[n];
    const std::size_t second_hi = order[n - 1];

    const double spread = fs[hi] - fs[lo];
    if (spread <= f_tol * (std::abs(fs[lo]) + 1.0)) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += xs[i][j];
    }
    for (std::size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - xs[hi][j]);
    const double fr = objective(xr);
    ++result.evals;

    if (fr < fs[lo]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + beta_e * (xr[j] - centroid[j]);
      const double fe = objective(xe);
      ++result.evals;
      if (fe < fr) {
        xs[hi] = xe;
        fs[hi] = fe;
      } else {
        xs[hi] = xr;
        fs[hi] = fr;
      }
    } else if (fr < fs[second_hi]) {
      xs[hi] = xr;
      fs[hi] = fr;
    } else {
      const bool outside = fr < fs[hi];
      if (outside) {
        for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + gamma_c * (xr[j] - centroid[j]);
      } else {
        for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] - gamma_c * (centroid[j] - xs[hi][j]);
      }
      const double fc = objective(xc);
      ++result.evals;
      if (fc < (outside ? fr : fs[hi])) {
        xs[hi] = xc;
        fs[hi] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (std::size_t j = 0; j < n; ++j) {
            xs[i][j] = xs[lo][j] + delta_s * (xs[i][j] - xs[lo][j]);
          }
          fs[i] = objective(xs[i]);
          ++result.evals;
        }
      }
    }
  }

  sort_order();
  result.best = xs[order[0]];
  result.f_best = fs[order[0]];
  return result;
}

std::vector<double> simplex_steps(std::size_t fourier_order) {
  std::vector<double> steps(11 + 2 * fourier_order, 0.05);
  steps[0] = 0.1;   // omega0
  steps[1] = 0.3;   // gamma (transformed)
  steps[2] = 0.3;   // beta
  steps[3] = 0.3;   // d
  steps[4] = 0.3;   // delta
  steps[5] = 0.4;   // nu
  steps[6] = 0.1;   // xi
  steps[7] = 0.2;   // phi
  steps[8] = 0.05;  // tau1
  steps[9] = 0.05;  // tau2
  steps[10] = 0.4;  // sigma_u2
  return steps;
}

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
  const double mu = sample_mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return acc / static_cast<double>(v.size());
}

}  // namespace

EstimationResult estimate(const SeriesPair& series, std::size_t fourier_order,
                          const OptimizerOptions& options) {
  check_series(series);
  const std::size_t T = series.size();
  if (T < 100) {
    throw data_error("estimate: at least 100 observations required");
  }

  const std::vector<CoordMap> maps = coordinate_maps(fourier_order);
  const std::size_t n = maps.size();
  const std::size_t J = options.truncation;

  std::vector<double> log_x(T);
  for (std::size_t i = 0; i < T; ++i) log_x[i] = std::log(series.x[i]);
  const double lx_mean = sample_mean(log_x);
  const double lx_var = sample_var(log_x);

  std::size_t total_evals = 0;
  auto objective = [&](const std::vector<double>& u) -> double {
    const ModelParams p = unpack_params(natural_point(u, maps), fourier_order);
    const InterceptSpec spec = InterceptSpec::fourier(T, p.fourier_a, p.fourier_b);
    const double ll = loglik(series, p, spec, J);
    return -ll;
  };

  // Built-in starting points: one data-driven (optionally seeded by a coarse
  // profile scan over d), one fixed conservative point. Starts past those are
  // deterministic jitters of the first keyed by options.seed.
  std::vector<std::vector<double>> starts;
  {
    ModelParams s0;
    s0.omega0 = 0.15 * lx_mean;
    s0.gamma = 0.2;
    s0.beta = 0.5;
    s0.d = 0.35;
    s0.delta = 1.0;
    s0.nu = 6.0;
    s0.xi = 0.0;
    s0.phi = 1.0;
    s0.tau1 = -0.05;
    s0.tau2 = 0.05;
    s0.sigma_u2 = std::max(0.5 * lx_var, 0.01);
    s0.fourier_a.assign(fourier_order, 0.0);
    s0.fourier_b.assign(fourier_order, 0.0);
    if (options.profile_d_init) {
      const InterceptSpec spec = InterceptSpec::fourier(T, s0.fourier_a, s0.fourier_b);
      const std::vector<double> grid{0.15, 0.25, 0.35, 0.45, 0.55, 0.65};
      double best_ll = -std::numeric_limits<double>::infinity();
      for (const auto& [d, ll] : profile_loglik_d(series, s0, spec, J, grid)) {
        ++total_evals;
        if (ll > best_ll) {
          best_ll = ll;
          s0.d = d;
        }
      }
    }
    starts.push_back(unconstrained_point(pack_params(s0), maps));

    ModelParams s1 = s0;
    s1.d = 0.2;
    s1.gamma = 0.1;
    s1.beta = 0.4;
    s1.delta = 0.9;
    s1.nu = 4.0;
    starts.push_back(unconstrained_point(pack_params(s1), maps));
  }
  if (options.warm_start) {
    ModelParams w = *options.warm_start;
    w.fourier_a.resize(fourier_order, 0.0);
    w.fourier_b.resize(fourier_order, 0.0);
    w.nu = std::max(w.nu, 2.11);
    starts.insert(starts.begin(), unconstrained_point(pack_params(w), maps));
  }
  const int want = std::max(options.starts, 1) + (options.warm_start ? 1 : 0);
  {
    RngStream jitter(options.seed, 0, 9000);
    while (static_cast<int>(starts.size()) < want) {
      std::vector<double> u = starts[options.warm_start ? 1 : 0];
      for (double& v : u) v += 0.5 * jitter.normal();
      starts.push_back(std::move(u));
    }
  }
  starts.resize(want);

  const std::vector<double> base_steps = simplex_steps(fourier_order);
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> best_u;
  bool best_converged = false;

  for (const auto& start : starts) {
    std::vector<double> point = start;
    double point_f = std::numeric_limits<double>::infinity();
    bool point_converged = false;
    for (int round = 0; round <= options.restarts; ++round) {
      std::vector<double> steps = base_steps;
      const double shrink = std::pow(0.5, round);
      for (double& s : steps) s *= shrink;
      SimplexResult run =
          nelder_mead(objective, point, steps, options.max_evals, options.f_tol);
      total_evals += run.evals;
      point = run.best;
      point_f = run.f_best;
      point_converged = run.converged;
    }
    if (point_f < best_f) {
      best_f = point_f;
      best_u = point;
      best_converged = point_converged;
    }
  }

  EstimationResult result;
  result.fourier_order = fourier_order;
  result.theta_hat = unpack_params(natural_point(best_u, maps), fourier_order);
  result.converged = best_converged;
  {
    const InterceptSpec spec = InterceptSpec::fourier(T, result.theta_hat.fourier_a,
                                                      result.theta_hat.fourier_b);
    result.loglik = loglik(series, result.theta_hat, spec, J);
  }

  if (options.compute_se) {
    const std::vector<double> theta = pack_params(result.theta_hat);
    auto nll = [&](const std::vector<double>& t) -> double {
      const ModelParams p = unpack_params(t, fourier_order);
      if (!in_hard_domain(p)) return std::numeric_limits<double>::infinity();
      const InterceptSpec spec = InterceptSpec::fourier(T, p.fourier_a, p.fourier_b);
      const double ll = loglik(series, p, spec, J);
      return ll <= kLogLikFloor ? std::numeric_limits<double>::infinity() : -ll;
    };
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = 1e-4 * std::max(std::abs(theta[i]), 0.1);

    Eigen::MatrixXd hess(n, n);
    const double f0 = nll(theta);
    total_evals += 1;
    bool hess_ok = std::isfinite(f0);
    for (std::size_t i = 0; i < n && hess_ok; ++i) {
      std::vector<double> tp = theta, tm = theta;
      tp[i] += h[i];
      tm[i] -= h[i];
      const double fp = nll(tp);
      const double fm = nll(tm);
      total_evals += 2;
      hess(i, i) = (fp + fm - 2.0 * f0) / (h[i] * h[i]);
      hess_ok = std::isfinite(hess(i, i));
      for (std::size_t j = i + 1; j < n && hess_ok; ++j) {
        std::vector<double> tpp = theta, tpm = theta, tmp = theta, tmm = theta;
        tpp[i] += h[i]; tpp[j] += h[j];
        tpm[i] += h[i]; tpm[j] -= h[j];
        tmp[i] -= h[i]; tmp[j] += h[j];
        tmm[i] -= h[i]; tmm[j] -= h[j];
        const double v =
            (nll(tpp) - nll(tpm) - nll(tmp) + nll(tmm)) / (4.0 * h[i] * h[j]);
        total_evals += 4;
        hess(i, j) = v;
        hess(j, i) = v;
        hess_ok = std::isfinite(v);
      }
    }

    if (hess_ok) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
      if (eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0) {
        const Eigen::MatrixXd cov = hess.inverse();
        std::vector<double> se(n);
        bool se_ok = true;
        for (std::size_t i = 0; i < n; ++i) {
          const double v = cov(i, i);
          se_ok = se_ok && v > 0.0 && std::isfinite(v);
          se[i] = se_ok ? std::sqrt(v) : 0.0;
        }
        if (se_ok) result.std_errors = std::move(se);
      }
    }
  }

  result.iterations = total_evals;
  return result;
}

}  // namespace arhyg
