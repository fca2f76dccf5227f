#include "arhygarch/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "arhygarch/errors.hpp"

namespace arhyg {

namespace {

struct RepOutcome {
  std::vector<double> d_hat;      // one per k
  std::vector<bool> converged;
  std::vector<double> loglik;
  bool valid = false;
};

std::string format_double(double v, int precision = 17) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace

std::string design_name(BreakDesign design) {
  switch (design) {
    case BreakDesign::m1: return "m1";
    case BreakDesign::m2: return "m2";
    case BreakDesign::m3: return "m3";
  }
  return "?";
}

MonteCarloReport run_study(const StudyConfig& cfg) {
  if (cfg.replications < 1) {
    throw std::domain_error("run_study: replications must be >= 1");
  }
  if (cfg.d_values.empty() || cfg.k_values.empty() || cfg.designs.empty()) {
    throw std::domain_error("run_study: empty experiment grid");
  }

  const std::size_t n_designs = cfg.designs.size();
  const std::size_t n_d = cfg.d_values.size();
  const std::size_t R = cfg.replications;

  // One task per (design, d, replication); the simulated path is shared by
  // every fitted k. Outcomes land in preassigned slots so the aggregation
  // below is identical for any worker count.
  struct Task {
    std::size_t design_idx, d_idx, rep;
  };
  std::vector<Task> tasks;
  tasks.reserve(n_designs * n_d * R);
  for (std::size_t di = 0; di < n_designs; ++di) {
    for (std::size_t vi = 0; vi < n_d; ++vi) {
      for (std::size_t rep = 0; rep < R; ++rep) {
        tasks.push_back({di, vi, rep});
      }
    }
  }

  std::vector<RepOutcome> outcomes(tasks.size());

  OptimizerOptions opt = cfg.optimizer;
  opt.compute_se = false;
  opt.truncation = cfg.truncation;

  auto run_task = [&](const Task& task, RepOutcome& slot) {
    const BreakDesign design = cfg.designs[task.design_idx];
    const double d_true = cfg.d_values[task.d_idx];
    try {
      SimConfig sim;
      sim.params = cfg.base_params;
      sim.params.d = d_true;
      sim.params.fourier_a.clear();
      sim.params.fourier_b.clear();
      sim.intercept = make_design(design, cfg.sample_size);
      sim.sample_size = cfg.sample_size;
      sim.burn_in = cfg.burn_in;
      sim.truncation = cfg.truncation;
      sim.seed = cfg.base_seed;
      sim.stream_id = task.rep;
      const SimulatedSeries path = simulate(sim);

      SeriesPair series{path.r, path.x};
      slot.d_hat.resize(cfg.k_values.size());
      slot.converged.resize(cfg.k_values.size());
      slot.loglik.resize(cfg.k_values.size());
      for (std::size_t ki = 0; ki < cfg.k_values.size(); ++ki) {
        const EstimationResult fit = estimate(series, cfg.k_values[ki], opt);
        slot.d_hat[ki] = fit.theta_hat.d;
        slot.converged[ki] = fit.converged;
        slot.loglik[ki] = fit.loglik;
      }
      slot.valid = true;
    } catch (const std::exception& e) {
      std::cerr << "montecarlo: replication " << task.rep << " (design "
                << design_name(design) << ", d = " << d_true << ") failed: " << e.what()
                << "\n";
      slot.valid = false;
    }
  };

  std::size_t workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min(workers, tasks.size());

  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(tasks[i], outcomes[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_task(tasks[i], outcomes[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Deterministic ordered reduction: cells sorted by design, d, k; reps in
  // replication order inside each cell.
  MonteCarloReport report;
  for (std::size_t di = 0; di < n_designs; ++di) {
    for (std::size_t vi = 0; vi < n_d; ++vi) {
      const std::size_t task_base = (di * n_d + vi) * R;
      for (std::size_t ki = 0; ki < cfg.k_values.size(); ++ki) {
        CellResult cell;
        cell.design = cfg.designs[di];
        cell.d = cfg.d_values[vi];
        cell.k = cfg.k_values[ki];

        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t rep = 0; rep < R; ++rep) {
          const RepOutcome& slot = outcomes[task_base + rep];
          RepRecord rec;
          rec.rep = rep;
          if (slot.valid) {
            rec.d_hat = slot.d_hat[ki];
            rec.converged = slot.converged[ki];
            rec.loglik = slot.loglik[ki];
            sum += rec.d_hat;
            ++n;
            if (rec.converged) ++cell.n_converged;
          } else {
            rec.d_hat = std::numeric_limits<double>::quiet_NaN();
            rec.converged = false;
            rec.loglik = std::numeric_limits<double>::quiet_NaN();
          }
          cell.reps.push_back(rec);
        }
        if (n > 0) {
          const double mean = sum / static_cast<double>(n);
          double msq = 0.0, var = 0.0;
          for (const RepRecord& rec : cell.reps) {
            if (!std::isfinite(rec.d_hat)) continue;
            msq += (rec.d_hat - cell.d) * (rec.d_hat - cell.d);
            var += (rec.d_hat - mean) * (rec.d_hat - mean);
          }
          cell.bias = mean - cell.d;
          cell.rmse = std::sqrt(msq / static_cast<double>(n));
          cell.se = std::sqrt(var / static_cast<double>(n));
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

std::string report_tables(const MonteCarloReport& report, TableFormat format) {
  if (report.cells.empty()) {
    throw data_error("report_tables: empty report");
  }
  std::ostringstream os;
  os.precision(17);
  switch (format) {
    case TableFormat::csv: {
      os << "design,d,k,bias,rmse,se,n_converged\n";
      for (const CellResult& c : report.cells) {
        os << design_name(c.design) << ',' << c.d << ',' << c.k << ',' << c.bias << ','
           << c.rmse << ',' << c.se << ',' << c.n_converged << '\n';
      }
      break;
    }
    case TableFormat::markdown: {
      os << "| design | d | k | bias | rmse | se | n_converged |\n";
      os << "|---|---|---|---|---|---|---|\n";
      os.precision(6);
      for (const CellResult& c : report.cells) {
        os << "| " << design_name(c.design) << " | " << c.d << " | " << c.k << " | "
           << c.bias << " | " << c.rmse << " | " << c.se << " | " << c.n_converged
           << " |\n";
      }
      break;
    }
    case TableFormat::text: {
      os.precision(6);
      os << std::fixed;
      os << "design      d   k      bias      rmse        se  n_conv\n";
      for (const CellResult& c : report.cells) {
        os << design_name(c.design);
        os << "    " << c.d << "  " << c.k << "  " << c.bias << "  " << c.rmse << "  "
           << c.se << "  " << c.n_converged << '\n';
      }
      break;
    }
  }
  return os.str();
}

std::string audit_csv(const MonteCarloReport& report) {
  std::ostringstream os;
  os << "design,d,k,rep,d_hat,converged,loglik\n";
  for (const CellResult& c : report.cells) {
    for (const RepRecord& rec : c.reps) {
      os << design_name(c.design) << ',' << format_double(c.d) << ',' << c.k << ','
         << rec.rep << ',' << format_double(rec.d_hat) << ','
         << (rec.converged ? 1 : 0) << ',' << format_double(rec.loglik) << '\n';
    }
  }
  return os.str();
}

}  // namespace arhyg
