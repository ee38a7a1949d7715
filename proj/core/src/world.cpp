#include "patrol/world.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace patrol {

WorldState WorldState::single_anomaly(std::size_t node_count, NodeId anomaly_node) {
  if (anomaly_node >= node_count) {
    throw Error(fmt::format("anomaly node {} outside graph of {} nodes", anomaly_node,
                            node_count));
  }
  WorldState w;
  w.truth.assign(node_count, false);
  w.truth[anomaly_node] = true;
  w.anomaly_node = anomaly_node;
  return w;
}

bool sense(const WorldState& world, NodeId node, double noise_p, RngStream& rng) {
  const bool flip = rng.bernoulli(noise_p);
  return world.truth.at(node) != flip;
}

RobotState make_robot(RobotId id, NodeId start, double speed, std::size_t node_count) {
  RobotState r;
  r.id = id;
  r.position = {start, start, 0.0};
  r.goal = start;
  r.speed = speed;
  r.beliefs = uncertain_beliefs(node_count);
  return r;
}

Point location(const PatrolGraph& g, const Position& p) {
  Point a = g.position(p.from);
  if (p.at_node()) return a;
  Point b = g.position(p.to);
  double len = *g.edge_length(p.from, p.to);
  double f = std::clamp(p.offset / len, 0.0, 1.0);
  return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
}

double distance_to(const PatrolGraph& g, const Position& p, NodeId target) {
  if (p.at_node()) return g.distance(p.from, target);
  double remaining = *g.edge_length(p.from, p.to) - p.offset;
  return remaining + g.distance(p.to, target);
}

std::optional<NodeId> advance(RobotState& robot, const PatrolGraph& g, double dt) {
  auto& pos = robot.position;
  if (pos.at_node()) {
    if (pos.from == robot.goal) return pos.from;
    pos.to = g.next_hop(pos.from, robot.goal);
    pos.offset = 0.0;
  }
  const double len = *g.edge_length(pos.from, pos.to);
  pos.offset += robot.speed * dt;
  if (pos.offset >= len - 1e-9) {
    NodeId reached = pos.to;
    pos = {reached, reached, 0.0};
    return reached;
  }
  return std::nullopt;
}

void IdlenessTracker::idleness_into(double clock, std::span<double> out) const {
  for (std::size_t v = 0; v < last_visit_.size(); ++v) out[v] = clock - last_visit_[v];
}

double IdlenessTracker::graph_idleness(double clock) const {
  if (last_visit_.empty()) return 0.0;
  double sum = 0.0;
  for (double lv : last_visit_) sum += clock - lv;
  return sum / static_cast<double>(last_visit_.size());
}

void IdlenessTracker::sample(double clock) {
  sample_sum_ += graph_idleness(clock);
  ++samples_;
}

double IdlenessTracker::average() const noexcept {
  return samples_ == 0 ? 0.0 : sample_sum_ / static_cast<double>(samples_);
}

Belief visit(RobotState& robot, IdlenessTracker& tracker, const WorldState& world, NodeId node,
             double noise_p, RngStream& rng, double clock) {
  const bool reading = sense(world, node, noise_p, rng);
  auto& b = robot.beliefs.at(node);
  b = measurement_update(b, reading);
  tracker.mark_visit(node, clock);
  return b;
}

}  // namespace patrol
