#include "arhygarch/montecarlo.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "arhygarch/errors.hpp"
#include "doctest.h"

using arhyg::audit_csv;
using arhyg::BreakDesign;
using arhyg::CellResult;
using arhyg::design_name;
using arhyg::MonteCarloReport;
using arhyg::report_tables;
using arhyg::run_study;
using arhyg::StudyConfig;
using arhyg::TableFormat;

namespace {

StudyConfig tiny_study() {
  StudyConfig cfg;
  cfg.d_values = {0.35};
  cfg.k_values = {0};
  cfg.designs = {BreakDesign::m1};
  cfg.sample_size = 300;
  cfg.replications = 4;
  cfg.truncation = 150;
  cfg.burn_in = 300;
  cfg.base_seed = 99;
  cfg.optimizer.starts = 1;
  cfg.optimizer.restarts = 1;
  cfg.optimizer.max_evals = 800;
  cfg.optimizer.profile_d_init = false;
  return cfg;
}

}  // namespace

TEST_CASE("single replication identities") {
  StudyConfig cfg = tiny_study();
  cfg.replications = 1;
  const MonteCarloReport report = run_study(cfg);
  REQUIRE(report.cells.size() == 1);
  const CellResult& cell = report.cells[0];
  REQUIRE(cell.reps.size() == 1);
  CHECK(cell.bias == doctest::Approx(cell.reps[0].d_hat - 0.35).epsilon(1e-14));
  CHECK(cell.se == 0.0);
  CHECK(cell.rmse == doctest::Approx(std::abs(cell.bias)).epsilon(1e-12));
}

TEST_CASE("error decomposition identity holds on every cell") {
  StudyConfig cfg = tiny_study();
  cfg.d_values = {0.25, 0.45};
  cfg.designs = {BreakDesign::m1, BreakDesign::m2};
  const MonteCarloReport report = run_study(cfg);
  REQUIRE(report.cells.size() == 4);
  for (const CellResult& cell : report.cells) {
    CHECK(std::abs(cell.rmse * cell.rmse - cell.bias * cell.bias - cell.se * cell.se) <=
          1e-12);
    CHECK(cell.reps.size() == cfg.replications);
  }
}

TEST_CASE("report is identical for one worker and many workers") {
  StudyConfig cfg = tiny_study();
  cfg.d_values = {0.3, 0.4};
  cfg.workers = 1;
  const MonteCarloReport serial = run_study(cfg);
  cfg.workers = 4;
  const MonteCarloReport parallel = run_study(cfg);
  CHECK(audit_csv(serial) == audit_csv(parallel));
  CHECK(report_tables(serial, TableFormat::csv) ==
        report_tables(parallel, TableFormat::csv));
}

TEST_CASE("cells come out sorted by design, d and k") {
  StudyConfig cfg = tiny_study();
  cfg.replications = 1;
  cfg.optimizer.max_evals = 200;
  cfg.d_values = {0.25, 0.45};
  cfg.k_values = {0, 1};
  cfg.designs = {BreakDesign::m1, BreakDesign::m3};
  const MonteCarloReport report = run_study(cfg);
  REQUIRE(report.cells.size() == 8);
  std::size_t i = 0;
  for (const char* design : {"m1", "m3"}) {
    for (double d : {0.25, 0.45}) {
      for (std::size_t k : {std::size_t{0}, std::size_t{1}}) {
        CHECK(design_name(report.cells[i].design) == design);
        CHECK(report.cells[i].d == d);
        CHECK(report.cells[i].k == k);
        ++i;
      }
    }
  }
}

TEST_CASE("table emission") {
  StudyConfig cfg = tiny_study();
  cfg.replications = 2;
  const MonteCarloReport report = run_study(cfg);

  const std::string csv = report_tables(report, TableFormat::csv);
  std::istringstream lines(csv);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "design,d,k,bias,rmse,se,n_converged");
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));

  // Numeric fields round-trip through the emitted text at full precision.
  std::istringstream fields(row);
  std::string design, d, k, bias, rmse, se, n_conv;
  std::getline(fields, design, ',');
  std::getline(fields, d, ',');
  std::getline(fields, k, ',');
  std::getline(fields, bias, ',');
  std::getline(fields, rmse, ',');
  std::getline(fields, se, ',');
  std::getline(fields, n_conv, ',');
  CHECK(design == "m1");
  CHECK(std::stod(d) == report.cells[0].d);
  CHECK(std::stod(bias) == report.cells[0].bias);
  CHECK(std::stod(rmse) == report.cells[0].rmse);
  CHECK(std::stod(se) == report.cells[0].se);
  CHECK(std::stoul(n_conv) == report.cells[0].n_converged);

  CHECK_THROWS_AS(report_tables(MonteCarloReport{}, TableFormat::csv),
                  arhyg::data_error);

  const std::string audit = audit_csv(report);
  std::size_t rows = 0;
  for (char ch : audit) rows += ch == '\n' ? 1 : 0;
  CHECK(rows == 1 + cfg.replications);  // header plus one line per replication
}

TEST_CASE("longer samples estimate d more precisely") {
  StudyConfig small = tiny_study();
  small.sample_size = 300;
  small.truncation = 300;
  small.replications = 24;
  small.optimizer.max_evals = 1500;
  small.optimizer.restarts = 1;
  StudyConfig large = small;
  large.sample_size = 1200;

  const double rmse_small = run_study(small).cells[0].rmse;
  const double rmse_large = run_study(large).cells[0].rmse;
  CHECK(rmse_large < rmse_small);
}
