#pragma once
#include <string>

#include "spinreg/csv.hpp"
#include "spinreg/scenario.hpp"

namespace spinreg::sweep {

struct SweepSummary {
  std::string csv_path;
  double max_quad_error = 0.0;
  bool tolerance_ok = true;  // every kernel entry met its error budget
};

// Evaluate the scenario's grid (rows may be computed on worker threads, output
// order and bytes are independent of the thread count) and write the CSV.
SweepSummary run_time_sweep(const Scenario& sc, int threads = 1, double tol = 1e-9);
SweepSummary run_cut_sweep(const Scenario& sc, int threads = 1, double tol = 1e-9);
SweepSummary run(const Scenario& sc, int threads = 1, double tol = 1e-9);

// Row computation without the file output; used by the sweep tests.
csvio::Table time_sweep_table(const Scenario& sc, int threads, double tol, SweepSummary& summary);
csvio::Table cut_sweep_table(const Scenario& sc, int threads, double tol, SweepSummary& summary);

}  // namespace spinreg::sweep
