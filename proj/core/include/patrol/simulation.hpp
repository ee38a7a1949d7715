#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patrol/comms.hpp"
#include "patrol/config.hpp"
#include "patrol/metrics.hpp"

namespace patrol {

/// One (strategy, noise, replicate) cell of the experiment matrix.
struct CellId {
  StrategyKind strategy = StrategyKind::CR;
  double noise = 0.0;
  int replicate = 0;
};

/// Seed for a cell, derived only from the master seed and the cell
/// coordinates so every cell can be rerun in isolation.
std::uint64_t cell_seed(std::uint64_t master_seed, const CellId& cell);

/// File-name stem such as `SEBS_n0.05_r03`.
std::string cell_name(const CellId& cell);

/// Receives event-log lines (without trailing newline).
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void line(std::string_view text) = 0;
};

/// The per-run metric record written to runs.csv.
struct RunRecord {
  StrategyKind strategy = StrategyKind::CR;
  double noise = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  double avg_graph_idleness = 0.0;
  double final_error = 0.0;
  double f_score = 0.0;  // rounded to 4 decimals
  double lambda2 = 0.0;
  std::optional<double> t_consensus;
  bool tp_consensus = false;
  std::size_t fp_consensus_count = 0;
  std::string event_log;  // path, empty when not written

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunOptions {
  EventSink* events = nullptr;
  bool keep_history = false;
};

struct RunResult {
  RunRecord record;
  ContactLog contacts;
  ConsensusReport consensus;
  ConfusionCounts confusion;
  Rational error;
  Rational f_score;
  BeliefMatrix final_beliefs;
  std::optional<BeliefHistory> history;
};

/// Simulate one cell: per tick, motion, then arrivals (visit, decide), then
/// the auction round when due, then pairwise exchanges, then idleness
/// sampling on whole seconds.
RunResult run_one(const ExperimentConfig& cfg, const PatrolGraph& g, const CellId& cell,
                  const RunOptions& options = {});

}  // namespace patrol
