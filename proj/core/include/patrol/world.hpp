#pragma once

#include <optional>
#include <span>
#include <vector>

#include "patrol/beliefs.hpp"
#include "patrol/graph.hpp"
#include "patrol/rng.hpp"

namespace patrol {

/// Ground truth for one run; constant once built.
struct WorldState {
  std::vector<bool> truth;
  NodeId anomaly_node = 0;

  static WorldState single_anomaly(std::size_t node_count, NodeId anomaly_node);
  std::size_t node_count() const noexcept { return truth.size(); }
};

/// Sensor reading at `node`: truth with probability 1 - noise_p, otherwise
/// its negation. Consumes exactly one draw.
bool sense(const WorldState& world, NodeId node, double noise_p, RngStream& rng);

/// Where a robot is. `from == to` means parked at node `from` with offset 0;
/// otherwise travelling along edge from->to, `offset` metres past `from`.
struct Position {
  NodeId from = 0;
  NodeId to = 0;
  double offset = 0.0;

  bool at_node() const noexcept { return from == to; }
};

struct RobotState {
  RobotId id = 0;
  Position position;
  NodeId goal = 0;
  double speed = 1.0;
  BeliefVector beliefs;
};

RobotState make_robot(RobotId id, NodeId start, double speed, std::size_t node_count);

/// Planar location; on an edge, interpolated linearly by fraction travelled.
Point location(const PatrolGraph& g, const Position& p);

/// Shortest-path distance from the robot's position to `target`.
double distance_to(const PatrolGraph& g, const Position& p, NodeId target);

/// Move speed*dt metres toward the goal along the canonical shortest path.
/// Motion halts at the first node reached within the step; that node is
/// returned. A robot already at its goal reports it without moving.
std::optional<NodeId> advance(RobotState& robot, const PatrolGraph& g, double dt);

/// Last-visit times per node plus the running time-average of graph idleness.
class IdlenessTracker {
 public:
  explicit IdlenessTracker(std::size_t node_count, double start_time = 0.0)
      : last_visit_(node_count, start_time) {}

  void mark_visit(NodeId v, double clock) { last_visit_.at(v) = clock; }
  double last_visit(NodeId v) const { return last_visit_.at(v); }
  double idleness(NodeId v, double clock) const { return clock - last_visit_.at(v); }
  void idleness_into(double clock, std::span<double> out) const;

  /// Mean instantaneous idleness over all nodes.
  double graph_idleness(double clock) const;

  void sample(double clock);
  std::size_t sample_count() const noexcept { return samples_; }
  /// Time-average of sampled graph idleness; 0 with no samples.
  double average() const noexcept;

  std::size_t node_count() const noexcept { return last_visit_.size(); }

 private:
  std::vector<double> last_visit_;
  double sample_sum_ = 0.0;
  std::size_t samples_ = 0;
};

/// A robot inspects `node`: belief := fuse(belief, reading); idleness resets.
/// Returns the belief after the update.
Belief visit(RobotState& robot, IdlenessTracker& tracker, const WorldState& world, NodeId node,
             double noise_p, RngStream& rng, double clock);

}  // namespace patrol
