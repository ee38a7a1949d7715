#include "patrol/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace patrol {

std::vector<CellId> matrix_cells(const ExperimentConfig& cfg) {
  std::vector<CellId> cells;
  for (auto s : cfg.strategies) {
    for (double p : cfg.noise_levels) {
      for (int r = 0; r < cfg.replicates; ++r) cells.push_back({s, p, r});
    }
  }
  return cells;
}

MatrixResult run_matrix(const ExperimentConfig& cfg, const PatrolGraph& g,
                        const MatrixOptions& options) {
  cfg.validate(g);
  const auto cells = matrix_cells(cfg);
  MatrixResult out;
  out.records.resize(cells.size());
  out.pair_counts.resize(cells.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = cells.size();

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      const auto& cell = cells[idx];
      try {
        std::unique_ptr<EventSink> sink;
        if (options.event_sink) sink = options.event_sink(cell);
        RunOptions ro;
        ro.events = sink.get();
        auto res = run_one(cfg, g, cell, ro);
        if (options.event_log_path) res.record.event_log = options.event_log_path(cell);
        out.records[idx] = std::move(res.record);
        out.pair_counts[idx] = res.contacts.pair_counts();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (idx < error_index) {
          error_index = idx;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (error) {
    const auto& cell = cells[error_index];
    std::string what = "unknown error";
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw Error(fmt::format("cell {} (seed {}) failed: {}", cell_name(cell),
                            cell_seed(cfg.master_seed, cell), what));
  }
  return out;
}

MatrixSummary summarize(std::span<const RunRecord> records) {
  // Group keys keep first-appearance order within the canonical strategy order.
  std::vector<std::pair<StrategyKind, double>> keys;
  for (const auto& r : records) {
    std::pair key{r.strategy, r.noise};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return static_cast<int>(a.first) < static_cast<int>(b.first);
    return a.second < b.second;
  });

  MatrixSummary summary;
  for (const auto& [strategy, noise] : keys) {
    std::vector<double> idl, f, lam, tc;
    std::size_t tp = 0, fp = 0;
    for (const auto& r : records) {
      if (r.strategy != strategy || r.noise != noise) continue;
      idl.push_back(r.avg_graph_idleness);
      f.push_back(r.f_score);
      lam.push_back(r.lambda2);
      if (r.t_consensus) tc.push_back(*r.t_consensus);
      tp += r.tp_consensus ? 1 : 0;
      fp += r.fp_consensus_count;
    }
    SummaryRow row;
    row.strategy = strategy;
    row.noise = noise;
    row.runs = idl.size();
    row.idleness_mean = mean(idl);
    row.idleness_sd = sample_sd(idl);
    row.f_score_mean = mean(f);
    row.f_score_sd = sample_sd(f);
    row.tp_consensus_rate = static_cast<double>(tp) / static_cast<double>(row.runs);
    row.fp_consensus_mean = static_cast<double>(fp) / static_cast<double>(row.runs);
    row.lambda2_mean = mean(lam);
    row.lambda2_median = median(lam);
    row.consensus_runs = tc.size();
    if (!tc.empty()) row.t_consensus_mean = mean(tc);
    row.single_replicate = row.runs == 1;
    summary.rows.push_back(row);
  }

  std::vector<double> noises;
  for (const auto& r : records) {
    if (std::find(noises.begin(), noises.end(), r.noise) == noises.end()) noises.push_back(r.noise);
  }
  std::sort(noises.begin(), noises.end());
  for (double noise : noises) {
    CorrelationRow row;
    row.noise = noise;
    for (const auto& r : records) {
      if (r.noise != noise || !r.t_consensus) continue;
      row.lambda2.push_back(r.lambda2);
      row.t_consensus.push_back(*r.t_consensus);
    }
    try {
      row.correlation = pearson(row.lambda2, row.t_consensus);
    } catch (const StatisticsError& e) {
      row.note = e.what();
    }
    summary.correlations.push_back(std::move(row));
  }
  return summary;
}

}  // namespace patrol
