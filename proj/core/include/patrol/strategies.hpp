#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "patrol/graph.hpp"
#include "patrol/rng.hpp"
#include "patrol/world.hpp"

namespace patrol {

enum class StrategyKind { CBLS, CGG, CR, DTAG, DTAP, GBS, HCR, HPCC, RAND, SEBS };

inline constexpr std::array<StrategyKind, 10> kAllStrategies{
    StrategyKind::CBLS, StrategyKind::CGG,  StrategyKind::CR,   StrategyKind::DTAG,
    StrategyKind::DTAP, StrategyKind::GBS,  StrategyKind::HCR,  StrategyKind::HPCC,
    StrategyKind::RAND, StrategyKind::SEBS};

std::string_view to_string(StrategyKind kind) noexcept;
std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept;

/// Nominal "decentralized" classification of each policy.
constexpr bool is_decentralized(StrategyKind kind) noexcept {
  return kind != StrategyKind::CGG && kind != StrategyKind::GBS;
}

/// Policies that read or write the shared coordination board.
constexpr bool uses_board(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::CBLS:
    case StrategyKind::CGG:
    case StrategyKind::DTAG:
    case StrategyKind::DTAP:
    case StrategyKind::SEBS:
      return true;
    default:
      return false;
  }
}

struct StrategyParams {
  double cbls_alpha = 0.3;
  double cbls_epsilon = 0.1;
  double dtap_period = 20.0;
  double dtap_range = 5.0;
  /// SEBS/CBLS divide a node's score by this per other robot already heading there.
  double intention_discount = 1.1;
  /// Metres of travel traded against one second of idleness in task utilities.
  double task_distance_weight = 3.0;
  /// CGG entry points spaced evenly along the route instead of all at its start.
  bool cgg_spaced_entry = false;
};

/// Everything a purely local policy may read: where it stands, the shared
/// node idleness, the graph, and its own random stream. Deliberately carries
/// no belief state of any robot.
struct LocalView {
  RobotId robot;
  NodeId current;
  const PatrolGraph& graph;
  std::span<const double> idleness;
  RngStream& rng;
};

/// Declared next goal of every robot.
class IntentionBoard {
 public:
  explicit IntentionBoard(std::size_t robots = 0) : goals_(robots) {}
  void set(RobotId r, NodeId goal) { goals_.at(r) = goal; }
  std::optional<NodeId> goal(RobotId r) const { return goals_.at(r); }
  /// Robots other than `self` whose declared goal is `v`.
  int others_heading_to(NodeId v, RobotId self) const;

 private:
  std::vector<std::optional<NodeId>> goals_;
};

/// Exclusive node claims used by the task-assignment policies.
class ClaimBoard {
 public:
  explicit ClaimBoard(std::size_t nodes = 0) : owner_(nodes) {}
  std::optional<RobotId> owner(NodeId v) const { return owner_.at(v); }
  bool claimed(NodeId v) const { return owner_.at(v).has_value(); }
  bool claimed_by_other(NodeId v, RobotId self) const {
    return owner_.at(v).has_value() && *owner_.at(v) != self;
  }
  void claim(NodeId v, RobotId r) { owner_.at(v) = r; }
  void release(NodeId v, RobotId r) {
    if (owner_.at(v) == r) owner_.at(v).reset();
  }
  std::size_t node_count() const noexcept { return owner_.size(); }

 private:
  std::vector<std::optional<RobotId>> owner_;
};

struct CoordinationBoard {
  IntentionBoard intentions;
  ClaimBoard claims;
};

struct CyclicMemory {
  std::size_t route_index = 0;
  bool joined = false;
};

struct LearningMemory {
  std::vector<double> expected_idleness;
  std::vector<int> visits;

  /// Bias-corrected moving average; 0 for a node never visited.
  double estimate(NodeId v, double alpha) const;
};

struct TaskMemory {
  std::optional<NodeId> task;
};

struct StrategyMemory {
  CyclicMemory cyclic;
  LearningMemory learning;
  TaskMemory task;

  static StrategyMemory fresh(std::size_t node_count);
};

// Local-only policies -------------------------------------------------------

NodeId decide_random(const LocalView& view);
NodeId decide_reactive(const LocalView& view);
NodeId decide_heuristic_reactive(const LocalView& view);
NodeId decide_heuristic_pathfinder(const LocalView& view);
NodeId decide_greedy_bayesian(const LocalView& view);

// Policies that exchange state through the board -----------------------------

NodeId decide_state_exchange_bayesian(const LocalView& view, IntentionBoard& board,
                                      const StrategyParams& params);
NodeId decide_bayesian_learning(const LocalView& view, LearningMemory& memory,
                                IntentionBoard& board, const StrategyParams& params);
NodeId decide_cyclic(const LocalView& view, CyclicMemory& memory, const Route& route,
                     std::size_t robot_count, bool spaced_entry);
NodeId decide_task_greedy(const LocalView& view, TaskMemory& memory, ClaimBoard& claims,
                          double distance_weight);
/// Between auction wins the auction policy behaves reactively, skipping
/// neighbours awarded to others; on reaching an awarded node the award is released.
NodeId decide_task_auction(const LocalView& view, TaskMemory& memory, ClaimBoard& claims);

/// Default mean-edge-length discount shared by the Bayesian scores.
double bayes_gain(double idleness, double distance, double mean_edge_length);

struct DecisionContext {
  LocalView view;
  StrategyMemory& memory;
  CoordinationBoard& board;
  const Route* route = nullptr;
  std::size_t robot_count = 1;
  const StrategyParams& params;
};

/// Choose the next goal for a robot that just reached its current goal.
NodeId decide_next(StrategyKind kind, DecisionContext& ctx);

/// Per-visit hook; only the learning policy records anything.
void observe_visit(StrategyKind kind, StrategyMemory& memory, NodeId node,
                   double idleness_at_visit, const StrategyParams& params);

struct AuctionAward {
  RobotId robot = 0;
  NodeId node = 0;
  bool self_awarded = false;
};

/// One periodic auction round. The most idle unclaimed node goes to the
/// cheapest bid (shortest-path distance) among idle robots that have at least
/// one peer within `range`; each idle robot with no peer in range instead
/// awards itself the unclaimed node maximizing idleness minus
/// `distance_weight` times distance.
/// Claims are recorded on `claims` and written to the winners' `tasks`.
/// Robots with `active[r] == false` (not yet launched) neither bid nor win.
std::vector<AuctionAward> run_auction(const PatrolGraph& g, std::span<const Position> positions,
                                      std::span<const bool> active, std::span<TaskMemory> tasks,
                                      ClaimBoard& claims, std::span<const double> idleness,
                                      double range, double distance_weight);

}  // namespace patrol
