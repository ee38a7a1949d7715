#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patrol/comms.hpp"
#include "patrol/graph.hpp"
#include "patrol/strategies.hpp"

namespace patrol {

/// Everything needed to reproduce an experiment matrix.
///
/// Text form is one `key = value` per line, `#` starts a comment, lists are
/// comma separated. Unknown keys are rejected. Keys:
///
///   map             path to a map file (relative to the config file)
///   map_seed        generator seed used when `map` is absent
///   strategies      e.g. `CR, SEBS` or `all`
///   noise_levels    e.g. `0, 0.05, 0.1, 0.2`
///   replicates, duration, n_robots, quorum, anomaly_node, start_node,
///   master_seed, dt, speed, launch_interval,
///   comm_range, comm_timeout,
///   cbls_alpha, cbls_epsilon, dtap_period,
///   intention_discount, task_distance_weight, cgg_spaced_entry (true/false)
struct ExperimentConfig {
  std::optional<std::string> map_path;
  std::uint64_t map_seed = 0;
  std::vector<StrategyKind> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  std::vector<double> noise_levels{0.0, 0.05, 0.10, 0.20};
  int replicates = 20;
  double duration = 3600.0;
  std::size_t n_robots = 8;
  CommConfig comm;
  double quorum = 0.85;
  NodeId anomaly_node = 30;
  NodeId start_node = 0;
  std::uint64_t master_seed = 0;
  double dt = 0.1;
  double speed = 1.0;
  /// Robots leave the start node one after another, this many seconds apart.
  double launch_interval = 10.0;
  StrategyParams strategy;

  /// Ticks per simulated second; dt must divide one second evenly.
  std::int64_t ticks_per_second() const;
  std::int64_t seconds_to_ticks(double seconds) const;

  /// Range checks; with a graph, also node-id checks.
  void validate() const;
  void validate(const PatrolGraph& g) const;
};

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);
/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& cfg);

/// The map named by the config, or the generated default.
PatrolGraph resolve_map(const ExperimentConfig& cfg);

}  // namespace patrol
