#include "spinreg/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spinreg/kernels.hpp"

namespace spinreg::sweep {

namespace {

struct RowStats {
  double max_quad_error = 0.0;
  bool converged = true;
};

// Run fn(i) for i in [0, n) on the requested number of threads.  The first
// exception wins and is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads < 1) throw std::invalid_argument("sweep: thread count must be >= 1");
  const auto workers = static_cast<std::size_t>(std::min<long>(threads, static_cast<long>(std::max<std::size_t>(n, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

csvio::Table time_sweep_table(const Scenario& sc, int threads, double tol, SweepSummary& summary) {
  if (sc.sweep_kind != SweepKind::time)
    throw std::invalid_argument("time_sweep_table: scenario is not a time sweep");
  const auto bath = sc.bath();

  csvio::Table table;
  table.columns.push_back("t");
  std::vector<std::string> mac_names;
  for (const auto& [name, win] : bath.macrofractions) mac_names.push_back(name);
  for (const auto& name : sc.pair_names) {
    table.columns.push_back(name + ".re_neg_log_gamma");
    table.columns.push_back(name + ".im_neg_log_gamma");
    for (const auto& mac : mac_names) table.columns.push_back(name + ".neg_log_B." + mac);
  }

  table.rows.assign(sc.grid.size(), {});
  std::vector<RowStats> stats(sc.grid.size());
  parallel_for(sc.grid.size(), threads, [&](std::size_t i) {
    const double t = sc.grid[i];
    const auto m = kernels::assemble(bath, sc.geometry, t, tol);
    auto& row = table.rows[i];
    row.reserve(table.columns.size());
    row.push_back(t);
    for (const auto& pair : sc.pairs) {
      const auto pd = pair_delta(pair.first, pair.second);
      const auto lg = log_decoherence(pd, m);
      row.push_back(lg.real());
      row.push_back(lg.imag());
      for (const auto& mac : mac_names) row.push_back(log_fidelity(pd, m, mac));
    }
    stats[i] = {m.quad_error, m.quad_converged};
  });

  for (const auto& st : stats) {
    summary.max_quad_error = std::max(summary.max_quad_error, st.max_quad_error);
    summary.tolerance_ok = summary.tolerance_ok && st.converged;
  }
  return table;
}

csvio::Table cut_sweep_table(const Scenario& sc, int threads, double tol, SweepSummary& summary) {
  if (sc.sweep_kind != SweepKind::cut)
    throw std::invalid_argument("cut_sweep_table: scenario is not a cut sweep");

  csvio::Table table;
  table.columns.push_back("alpha");
  for (const auto& name : sc.pair_names) {
    table.columns.push_back(name + ".re_neg_log_gamma");
    table.columns.push_back(name + ".neg_log_B.obs");
  }

  table.rows.assign(sc.grid.size(), {});
  std::vector<RowStats> stats(sc.grid.size());
  parallel_for(sc.grid.size(), threads, [&](std::size_t i) {
    const double alpha = sc.grid[i];
    const auto bath = sc.bath(alpha);
    const auto m = kernels::assemble(bath, sc.geometry, sc.t_asym, tol);
    auto& row = table.rows[i];
    row.reserve(table.columns.size());
    row.push_back(alpha);
    for (const auto& pair : sc.pairs) {
      const auto pd = pair_delta(pair.first, pair.second);
      row.push_back(log_real_decoherence(pd, m));
      row.push_back(log_fidelity(pd, m, "obs"));
    }
    stats[i] = {m.quad_error, m.quad_converged};
  });

  for (const auto& st : stats) {
    summary.max_quad_error = std::max(summary.max_quad_error, st.max_quad_error);
    summary.tolerance_ok = summary.tolerance_ok && st.converged;
  }
  return table;
}

SweepSummary run_time_sweep(const Scenario& sc, int threads, double tol) {
  SweepSummary summary;
  summary.csv_path = sc.csv_path;
  const auto table = time_sweep_table(sc, threads, tol, summary);
  csvio::write_csv(table, sc.csv_path);
  return summary;
}

SweepSummary run_cut_sweep(const Scenario& sc, int threads, double tol) {
  SweepSummary summary;
  summary.csv_path = sc.csv_path;
  const auto table = cut_sweep_table(sc, threads, tol, summary);
  csvio::write_csv(table, sc.csv_path);
  return summary;
}

SweepSummary run(const Scenario& sc, int threads, double tol) {
  return sc.sweep_kind == SweepKind::time ? run_time_sweep(sc, threads, tol)
                                          : run_cut_sweep(sc, threads, tol);
}

}  // namespace spinreg::sweep
