// Command-line front door: simulate, estimate, stability, coeffs, montecarlo.
//
// Exit codes: 0 success, 2 usage/config error, 3 data error, 4 numerical
// failure.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "arhygarch/csv.hpp"
#include "arhygarch/errors.hpp"
#include "arhygarch/inference.hpp"
#include "arhygarch/keyval.hpp"
#include "arhygarch/lagpoly.hpp"
#include "arhygarch/model.hpp"
#include "arhygarch/montecarlo.hpp"
#include "arhygarch/simulate.hpp"

namespace {

using arhyg::BreakDesign;
using arhyg::Interval;
using arhyg::KeyValueConfig;
using arhyg::ModelParams;

constexpr Interval kOmegaRange{-1e6, 1e6, false, false};
constexpr Interval kGammaRange{0.0, 0.999, true, true};
constexpr Interval kBetaRange{0.0, 0.999, true, true};
constexpr Interval kDRange{0.01, 0.99, true, true};
constexpr Interval kDeltaRange{0.05, 5.0, true, true};
constexpr Interval kNuRange{2.1, 1000.0, true, false};
constexpr Interval kSigmaU2Range{1e-8, 1e6, true, false};
constexpr Interval kLoadingRange{-10.0, 10.0, false, false};
constexpr Interval kLeverageRange{-5.0, 5.0, false, false};
constexpr Interval kHarmonicRange{-10.0, 10.0, false, false};

// Model parameters from a key-value config; d may be excluded when the caller
// supplies it per experiment cell.
ModelParams params_from_config(KeyValueConfig& cfg, bool with_d) {
  ModelParams p;
  p.omega0 = cfg.number("omega0", p.omega0, kOmegaRange);
  p.gamma = cfg.number("gamma", p.gamma, kGammaRange);
  p.beta = cfg.number("beta", p.beta, kBetaRange);
  if (with_d) p.d = cfg.number("d", p.d, kDRange);
  p.delta = cfg.number("delta", p.delta, kDeltaRange);
  p.nu = cfg.number("nu", p.nu, kNuRange);
  p.xi = cfg.number("xi", p.xi, kOmegaRange);
  p.phi = cfg.number("phi", p.phi, kLoadingRange);
  p.tau1 = cfg.number("tau1", p.tau1, kLeverageRange);
  p.tau2 = cfg.number("tau2", p.tau2, kLeverageRange);
  p.sigma_u2 = cfg.number("sigma_u2", p.sigma_u2, kSigmaU2Range);
  return p;
}

BreakDesign design_from_name(const std::string& name) {
  if (name == "m1") return BreakDesign::m1;
  if (name == "m2") return BreakDesign::m2;
  if (name == "m3") return BreakDesign::m3;
  throw arhyg::config_error("unknown design '" + name + "'; expected m1, m2 or m3");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw arhyg::data_error("cannot open output file: " + path);
  out << text;
  if (!out) throw arhyg::data_error("failed while writing: " + path);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config_path;
  std::string out_path;
  bool with_h = false;
  std::int64_t seed_override = -1;
};

void run_simulate(const SimulateArgs& args) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(args.config_path);

  arhyg::SimConfig sim;
  sim.params = params_from_config(cfg, /*with_d=*/true);
  sim.sample_size = cfg.integer("T", 1000);
  sim.burn_in = cfg.integer("burn_in", 1000);
  sim.truncation = cfg.integer("trunc", 1000);
  sim.seed = cfg.integer("seed", 1);
  sim.stream_id = cfg.integer("stream", 0);
  if (sim.sample_size < 1) throw arhyg::config_error("key 'T' must be >= 1");
  if (sim.truncation < 1) throw arhyg::config_error("key 'trunc' must be >= 1");

  const std::string design = cfg.text("design", "m1");
  if (design == "fourier") {
    const std::uint64_t k = cfg.integer("k", 0);
    if (k > 32) throw arhyg::config_error("key 'k' must be <= 32");
    std::vector<double> a(k, 0.0), b(k, 0.0);
    for (std::uint64_t j = 1; j <= k; ++j) {
      a[j - 1] = cfg.number("a" + std::to_string(j), 0.0, kHarmonicRange);
      b[j - 1] = cfg.number("b" + std::to_string(j), 0.0, kHarmonicRange);
    }
    sim.params.fourier_a = a;
    sim.params.fourier_b = b;
    sim.intercept = arhyg::InterceptSpec::fourier(sim.sample_size, a, b);
  } else {
    sim.intercept = arhyg::make_design(design_from_name(design), sim.sample_size);
  }
  cfg.finish();
  if (args.seed_override >= 0) sim.seed = static_cast<std::uint64_t>(args.seed_override);

  std::cout << "# effective configuration\n" << cfg.echo();
  const arhyg::SimulatedSeries path = arhyg::simulate(sim);
  arhyg::write_series_csv(args.out_path, path, args.with_h);
  std::cout << "wrote " << path.size() << " observations to " << args.out_path << "\n";
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string data_path;
  std::string out_path;
  std::uint64_t k = 0;
  std::uint64_t trunc = 1000;
  std::uint64_t seed = 0;
  int starts = 2;
  int max_evals = 4000;
  bool no_se = false;
};

const char* const kParamNames[11] = {"omega0", "gamma", "beta",  "d",
                                     "delta",  "nu",    "xi",    "phi",
                                     "tau1",   "tau2",  "sigma_u2"};

std::vector<std::string> result_param_names(std::size_t k) {
  std::vector<std::string> names(kParamNames, kParamNames + 11);
  for (std::size_t j = 1; j <= k; ++j) names.push_back("a" + std::to_string(j));
  for (std::size_t j = 1; j <= k; ++j) names.push_back("b" + std::to_string(j));
  return names;
}

void run_estimate(const EstimateArgs& args) {
  const arhyg::SeriesPair series = arhyg::read_series_csv(args.data_path);

  arhyg::OptimizerOptions options;
  options.truncation = args.trunc;
  options.seed = args.seed;
  options.starts = args.starts;
  options.max_evals = args.max_evals;
  options.compute_se = !args.no_se;

  const arhyg::EstimationResult fit = arhyg::estimate(series, args.k, options);
  const std::vector<double> theta = arhyg::pack_params(fit.theta_hat);
  const std::vector<std::string> names = result_param_names(args.k);

  std::cout << "observations: " << series.size() << "\n";
  std::cout << "fourier order k: " << fit.fourier_order << "\n";
  std::cout << "log-likelihood: " << std::setprecision(10) << fit.loglik << "\n";
  std::cout << "converged: " << (fit.converged ? "yes" : "no")
            << "   function evaluations: " << fit.iterations << "\n";
  std::cout << std::left << std::setw(10) << "parameter" << std::right << std::setw(14)
            << "estimate" << std::setw(14) << "std.err" << "\n";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::cout << std::left << std::setw(10) << names[i] << std::right
              << std::setw(14) << std::setprecision(6) << std::fixed << theta[i];
    if (fit.std_errors) {
      std::cout << std::setw(14) << (*fit.std_errors)[i];
    } else {
      std::cout << std::setw(14) << "-";
    }
    std::cout << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
  if (!fit.std_errors && !args.no_se) {
    std::cout << "(standard errors unavailable: Hessian not positive definite)\n";
  }

  if (!args.out_path.empty()) {
    std::ostringstream os;
    os << "k,loglik,converged,evals";
    for (const std::string& n : names) os << ',' << n;
    for (const std::string& n : names) os << ",se_" << n;
    os << '\n';
    os << fit.fourier_order << ',' << arhyg::csv_double(fit.loglik) << ','
       << (fit.converged ? 1 : 0) << ',' << fit.iterations;
    for (double v : theta) os << ',' << arhyg::csv_double(v);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      os << ',' << (fit.std_errors ? arhyg::csv_double((*fit.std_errors)[i]) : "");
    }
    os << '\n';
    write_text_file(args.out_path, os.str());
  }
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

struct StabilityArgs {
  ModelParams params;
  std::uint64_t trunc = 3000;
  std::string csv_path;
};

void run_stability(const StabilityArgs& args) {
  const arhyg::StabilityReport report = arhyg::stability_check(args.params, args.trunc);

  std::cout << std::setprecision(10);
  std::cout << std::left << std::setw(22) << "condition1" << report.condition1
            << "  (certifies when <= 0)\n";
  std::cout << std::left << std::setw(22) << "condition2" << report.condition2
            << "  (certifies when <= 2)\n";
  std::cout << std::left << std::setw(22) << "rho_closed_form" << report.rho_closed_form
            << "\n";
  std::cout << std::left << std::setw(22) << "rho_numeric" << report.rho_numeric << "\n";
  std::cout << std::left << std::setw(22) << "certified"
            << (report.certified ? "yes" : "no") << "\n";
  std::cout << std::left << std::setw(22) << "abs_series" << report.weight_sum_abs
            << "\n";
  std::cout << std::left << std::setw(22) << "truncation_error" << report.truncation_error
            << "  (tail supplied in closed form)\n";
  if (report.moment_bound) {
    const auto& H = *report.moment_bound;
    std::cout << std::left << std::setw(22) << "moment_bound" << "(" << H[0] << ", "
              << H[1] << ", " << H[2] << ")\n";
  } else {
    std::cout << std::left << std::setw(22) << "moment_bound" << "absent (rho >= 1)\n";
  }

  if (!args.csv_path.empty()) {
    std::ostringstream os;
    os << "condition1,condition2,rho_closed_form,rho_numeric,certified,abs_series,"
          "truncation_error,bound_log_h,bound_log_h1,bound_log_h_lag\n";
    os << arhyg::csv_double(report.condition1) << ','
       << arhyg::csv_double(report.condition2) << ','
       << arhyg::csv_double(report.rho_closed_form) << ','
       << arhyg::csv_double(report.rho_numeric) << ',' << (report.certified ? 1 : 0)
       << ',' << arhyg::csv_double(report.weight_sum_abs) << ','
       << arhyg::csv_double(report.truncation_error);
    if (report.moment_bound) {
      for (double v : *report.moment_bound) os << ',' << arhyg::csv_double(v);
    } else {
      os << ",,,";
    }
    os << '\n';
    write_text_file(args.csv_path, os.str());
  }
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

struct CoeffsArgs {
  double d = 0.35;
  double beta = 0.4;
  double gamma = 0.1;
  double delta = 0.9;
  std::uint64_t trunc = 1000;
  std::string out_path;
};

void run_coeffs(const CoeffsArgs& args) {
  const arhyg::LagWeights lw =
      arhyg::hygarch_weights(args.d, args.beta, args.gamma, args.delta, args.trunc);
  std::ostringstream os;
  os << "j,w_j\n";
  for (std::size_t j = 1; j <= lw.truncation(); ++j) {
    os << j << ',' << arhyg::csv_double(lw.weights[j]) << '\n';
  }
  if (args.out_path.empty()) {
    std::cout << os.str();
  } else {
    write_text_file(args.out_path, os.str());
    std::cout << "wrote " << lw.truncation() << " coefficients to " << args.out_path
              << " (tail mass " << arhyg::weight_tail_mass(lw) << ")\n";
  }
}

// ---------------------------------------------------------------------------
// montecarlo
// ---------------------------------------------------------------------------

struct MonteCarloArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t workers = 0;
  bool full = false;
};

void run_montecarlo(const MonteCarloArgs& args) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(args.config_path);

  arhyg::StudyConfig study;
  study.base_params = params_from_config(cfg, /*with_d=*/false);
  study.d_values = cfg.number_list("d_values", {0.45});
  for (double d : study.d_values) {
    if (!kDRange.contains(d)) {
      throw arhyg::config_error("key 'd_values' entry " + arhyg::csv_double(d) +
                                " out of range; legal interval is " + kDRange.describe());
    }
  }
  study.designs.clear();
  for (const std::string& name : cfg.text_list("designs", {"m1"})) {
    study.designs.push_back(design_from_name(name));
  }
  study.k_values.clear();
  {
    const std::vector<double> ks = cfg.number_list("k_values", {0});
    for (double k : ks) {
      if (k < 0 || k > 32 || k != static_cast<double>(static_cast<std::size_t>(k))) {
        throw arhyg::config_error("key 'k_values' entries must be integers in [0, 32]");
      }
      study.k_values.push_back(static_cast<std::size_t>(k));
    }
  }
  study.sample_size = cfg.integer("T", 1000);
  study.replications = cfg.integer("replications", 100);
  study.truncation = cfg.integer("trunc", 1000);
  study.burn_in = cfg.integer("burn_in", 1000);
  study.base_seed = cfg.integer("base_seed", 1);
  study.optimizer.starts = static_cast<int>(cfg.integer("starts", 2));
  study.optimizer.restarts = static_cast<int>(cfg.integer("restarts", 2));
  study.optimizer.max_evals = static_cast<int>(cfg.integer("max_evals", 4000));
  cfg.finish();

  study.workers = args.workers;
  if (args.full) {
    study.replications = 500;
    study.sample_size = 3000;
    study.truncation = 3000;
    std::cerr << "warning: --full selects R=500, T=3000, J=3000; expect hours of "
                 "compute\n";
  }

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path out(args.out_dir);
  write_text_file((out / "config.echo").string(), cfg.echo());

  const arhyg::MonteCarloReport report = arhyg::run_study(study);
  write_text_file((out / "report.csv").string(),
                  arhyg::report_tables(report, arhyg::TableFormat::csv));
  write_text_file((out / "audit.csv").string(), arhyg::audit_csv(report));
  std::cout << arhyg::report_tables(report, arhyg::TableFormat::text);
  std::cout << "report written to " << (out / "report.csv").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive realized hyperbolic GARCH toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "Generate a synthetic series");
  sim->add_option("--config", sim_args.config_path, "key = value configuration file")
      ->required();
  sim->add_option("--out", sim_args.out_path, "output CSV path")->required();
  sim->add_flag("--with-h", sim_args.with_h, "include the true variance column h");
  sim->add_option("--seed", sim_args.seed_override, "override the config seed");

  EstimateArgs est_args;
  CLI::App* est = app.add_subcommand("estimate", "Fit the model to a t,r,x CSV");
  est->add_option("--data", est_args.data_path, "input CSV with columns t,r,x")
      ->required();
  est->add_option("--k", est_args.k, "fourier order of the fitted intercept");
  est->add_option("--trunc", est_args.trunc, "filter truncation length");
  est->add_option("--seed", est_args.seed, "jitter seed for extra starts");
  est->add_option("--starts", est_args.starts, "number of optimizer starts");
  est->add_option("--max-evals", est_args.max_evals, "evaluation budget per simplex run");
  est->add_option("--out", est_args.out_path, "write the fit as a flat CSV row");
  est->add_flag("--no-se", est_args.no_se, "skip numerical-Hessian standard errors");

  StabilityArgs stab_args;
  CLI::App* stab = app.add_subcommand("stability", "Second-moment stability report");
  stab->add_option("--omega0", stab_args.params.omega0, "intercept level");
  stab->add_option("--gamma", stab_args.params.gamma, "MA-side coefficient");
  stab->add_option("--beta", stab_args.params.beta, "AR-side coefficient");
  stab->add_option("--d", stab_args.params.d, "long-memory parameter");
  stab->add_option("--delta", stab_args.params.delta, "amplification");
  stab->add_option("--phi", stab_args.params.phi, "measurement loading");
  stab->add_option("--xi", stab_args.params.xi, "measurement intercept");
  stab->add_option("--trunc", stab_args.trunc, "series truncation");
  stab->add_option("--csv", stab_args.csv_path, "also write the report as CSV");

  CoeffsArgs coeff_args;
  CLI::App* coeffs = app.add_subcommand("coeffs", "Dump filter lag weights as CSV");
  coeffs->add_option("--d", coeff_args.d, "long-memory parameter");
  coeffs->add_option("--beta", coeff_args.beta, "AR-side coefficient");
  coeffs->add_option("--gamma", coeff_args.gamma, "MA-side coefficient");
  coeffs->add_option("--delta", coeff_args.delta, "amplification");
  coeffs->add_option("--trunc", coeff_args.trunc, "number of lags");
  coeffs->add_option("--out", coeff_args.out_path, "output path (stdout when absent)");

  MonteCarloArgs mc_args;
  CLI::App* mc = app.add_subcommand("montecarlo", "Run a replication study");
  mc->add_option("--config", mc_args.config_path, "key = value study configuration")
      ->required();
  mc->add_option("--out", mc_args.out_dir, "output directory")->required();
  mc->add_option("--workers", mc_args.workers, "worker threads (0 = hardware)");
  mc->add_flag("--full", mc_args.full, "full-scale study: R=500, T=3000, J=3000");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) run_simulate(sim_args);
    if (est->parsed()) run_estimate(est_args);
    if (stab->parsed()) run_stability(stab_args);
    if (coeffs->parsed()) run_coeffs(coeff_args);
    if (mc->parsed()) run_montecarlo(mc_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const arhyg::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const arhyg::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const arhyg::numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
