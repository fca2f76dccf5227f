#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arhygarch/inference.hpp"
#include "arhygarch/simulate.hpp"

namespace arhyg {

/// One Monte Carlo experiment grid: every (design, d, k) cell is run for
/// `replications` independent paths. Replication r always draws from
/// stream_id r of base_seed, so results do not depend on worker scheduling.
struct StudyConfig {
  std::vector<double> d_values{0.45};
  std::vector<std::size_t> k_values{0};
  std::vector<BreakDesign> designs{BreakDesign::m1};
  std::size_t sample_size = 1000;   // T
  std::size_t replications = 100;   // R
  std::size_t truncation = 1000;    // J for both the DGP and the filter
  std::size_t burn_in = 1000;
  std::uint64_t base_seed = 1;
  std::size_t workers = 0;          // 0 = hardware concurrency
  OptimizerOptions optimizer;       // compute_se forced off inside the study
  ModelParams base_params;          // d is overridden per cell
};

struct RepRecord {
  std::size_t rep = 0;
  double d_hat = 0.0;
  bool converged = false;
  double loglik = 0.0;
};

struct CellResult {
  BreakDesign design = BreakDesign::m1;
  double d = 0.0;          // generating value
  std::size_t k = 0;       // fitted fourier order
  double bias = 0.0;       // mean(d_hat) - d
  double rmse = 0.0;       // sqrt(mean((d_hat - d)^2))
  double se = 0.0;         // population standard deviation of d_hat
  std::size_t n_converged = 0;
  std::vector<RepRecord> reps;  // per-replication audit trail
};

struct MonteCarloReport {
  std::vector<CellResult> cells;  // sorted by design, then d, then k
};

/// Run the full grid. Per-replication estimation failures are recorded with
/// converged = false (the optimizer's best point is still used); they never
/// abort the study.
MonteCarloReport run_study(const StudyConfig& cfg);

enum class TableFormat { text, csv, markdown };

std::string design_name(BreakDesign design);

/// One row per cell: design, d, k, bias, rmse, se, n_converged.
/// Throws arhyg::data_error on an empty report.
std::string report_tables(const MonteCarloReport& report, TableFormat format);

/// Long-format per-replication CSV: design,d,k,rep,d_hat,converged,loglik.
std::string audit_csv(const MonteCarloReport& report);

}  // namespace arhyg
