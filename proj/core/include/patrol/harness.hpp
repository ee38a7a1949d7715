#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patrol/simulation.hpp"

namespace patrol {

/// Canonical cell order: strategy, then noise, then replicate.
std::vector<CellId> matrix_cells(const ExperimentConfig& cfg);

struct MatrixOptions {
  unsigned jobs = 1;
  /// Optional per-cell event sink; called from worker threads, once per cell.
  std::function<std::unique_ptr<EventSink>(const CellId&)> event_sink;
  /// Optional per-cell event-log path stored in the record.
  std::function<std::string(const CellId&)> event_log_path;
};

struct MatrixResult {
  std::vector<RunRecord> records;                // canonical order
  std::vector<std::vector<double>> pair_counts;  // n*n per record
};

/// Runs every cell; independent cells may run concurrently, output order is
/// canonical regardless. A failing cell aborts the matrix with its seed.
MatrixResult run_matrix(const ExperimentConfig& cfg, const PatrolGraph& g,
                        const MatrixOptions& options = {});

struct SummaryRow {
  StrategyKind strategy = StrategyKind::CR;
  double noise = 0.0;
  std::size_t runs = 0;
  double idleness_mean = 0.0, idleness_sd = 0.0;
  double f_score_mean = 0.0, f_score_sd = 0.0;
  double tp_consensus_rate = 0.0;
  double fp_consensus_mean = 0.0;
  double lambda2_mean = 0.0, lambda2_median = 0.0;
  std::size_t consensus_runs = 0;
  std::optional<double> t_consensus_mean;
  bool single_replicate = false;  // sd reported as 0
};

/// (lambda2, t_consensus) pairs at one noise level, over runs that reached
/// consensus, with their Pearson correlation when defined.
struct CorrelationRow {
  double noise = 0.0;
  std::vector<double> lambda2;
  std::vector<double> t_consensus;
  std::optional<Correlation> correlation;
  std::string note;
};

struct MatrixSummary {
  std::vector<SummaryRow> rows;  // ordered by strategy then noise
  std::vector<CorrelationRow> correlations;
};

/// Pure function of the record set.
MatrixSummary summarize(std::span<const RunRecord> records);

// CSV ------------------------------------------------------------------------

inline constexpr const char* kRunsHeader =
    "strategy,noise,replicate,seed,avg_graph_idleness,final_error,f_score,lambda2,"
    "t_consensus,tp_consensus,fp_consensus_count";

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records);
std::vector<RunRecord> parse_runs_csv(std::string_view text);

void write_summary_csv(std::ostream& out, const MatrixSummary& summary);
void write_correlation_csv(std::ostream& out, const MatrixSummary& summary);

/// `i,j,count` for every pair with at least one exchange.
void write_pair_counts_csv(std::ostream& out, std::size_t n, std::span<const double> counts);
std::vector<double> parse_pair_counts_csv(std::string_view text, std::size_t n);

void write_fig3_connectivity(std::ostream& out, std::span<const RunRecord> records);
void write_fig4_consensus(std::ostream& out, std::span<const RunRecord> records);
void write_fig5_tp_fp(std::ostream& out, const MatrixSummary& summary);

struct SocialEdge {
  StrategyKind strategy;
  double noise;
  std::size_t i, j;
  double mean_count;
};
/// Mean pair counts per (strategy, noise) over replicates.
std::vector<SocialEdge> social_edges(std::span<const RunRecord> records,
                                     std::span<const std::vector<double>> pair_counts,
                                     std::size_t n);
void write_social_edges(std::ostream& out, std::span<const SocialEdge> edges);

// Run directory layout -------------------------------------------------------

/// Writes runs.csv, config.txt, contacts/<cell>.csv (and events/ when the
/// matrix was run with file sinks).
void write_run_directory(const std::string& dir, const ExperimentConfig& cfg,
                         const MatrixResult& result);
std::vector<RunRecord> read_runs(const std::string& dir);
/// Pair-count matrices for records, read from contacts/ (n from the files).
std::vector<std::vector<double>> read_pair_counts(const std::string& dir,
                                                  std::span<const RunRecord> records,
                                                  std::size_t& robots);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace patrol
