#include "patrol/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace patrol {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Strictly-greater comparison keeps the first (lowest-id) candidate on ties.
template <typename Score>
NodeId argmax_neighbor(const LocalView& view, Score&& score) {
  NodeId best = view.current;
  double best_score = kNegInf;
  for (const auto& nb : view.graph.neighbors(view.current)) {
    double s = score(nb.node);
    if (s > best_score) {
      best_score = s;
      best = nb.node;
    }
  }
  return best;
}

double ratio_or_one(double num, double den) { return den == 0.0 ? 1.0 : num / den; }

}  // namespace

std::string_view to_string(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::CBLS: return "CBLS";
    case StrategyKind::CGG: return "CGG";
    case StrategyKind::CR: return "CR";
    case StrategyKind::DTAG: return "DTAG";
    case StrategyKind::DTAP: return "DTAP";
    case StrategyKind::GBS: return "GBS";
    case StrategyKind::HCR: return "HCR";
    case StrategyKind::HPCC: return "HPCC";
    case StrategyKind::RAND: return "RAND";
    case StrategyKind::SEBS: return "SEBS";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept {
  for (auto k : kAllStrategies) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

int IntentionBoard::others_heading_to(NodeId v, RobotId self) const {
  int count = 0;
  for (std::size_t r = 0; r < goals_.size(); ++r) {
    if (r != self && goals_[r] == v) ++count;
  }
  return count;
}

StrategyMemory StrategyMemory::fresh(std::size_t node_count) {
  StrategyMemory m;
  m.learning.expected_idleness.assign(node_count, 0.0);
  m.learning.visits.assign(node_count, 0);
  return m;
}

double bayes_gain(double idleness, double distance, double mean_edge_length) {
  return idleness * std::exp2(-distance / mean_edge_length);
}

NodeId decide_random(const LocalView& view) {
  auto nbs = view.graph.neighbors(view.current);
  if (nbs.empty()) return view.current;
  return nbs[view.rng.below(nbs.size())].node;
}

NodeId decide_reactive(const LocalView& view) {
  return argmax_neighbor(view, [&](NodeId v) { return view.idleness[v]; });
}

NodeId decide_heuristic_reactive(const LocalView& view) {
  double max_idl = 0.0, max_d = 0.0;
  for (const auto& nb : view.graph.neighbors(view.current)) {
    max_idl = std::max(max_idl, view.idleness[nb.node]);
    max_d = std::max(max_d, view.graph.distance(view.current, nb.node));
  }
  return argmax_neighbor(view, [&](NodeId v) {
    return 0.5 * ratio_or_one(view.idleness[v], max_idl) +
           0.5 * (1.0 - ratio_or_one(view.graph.distance(view.current, v), max_d));
  });
}

NodeId decide_heuristic_pathfinder(const LocalView& view) {
  const auto m = static_cast<NodeId>(view.graph.node_count());
  double max_idl = 0.0, max_d = 0.0;
  for (NodeId v = 0; v < m; ++v) {
    if (v == view.current) continue;
    max_idl = std::max(max_idl, view.idleness[v]);
    max_d = std::max(max_d, view.graph.distance(view.current, v));
  }
  NodeId best = view.current;
  double best_score = kNegInf;
  for (NodeId v = 0; v < m; ++v) {
    if (v == view.current) continue;
    double s = 0.5 * ratio_or_one(view.idleness[v], max_idl) +
               0.5 * (1.0 - ratio_or_one(view.graph.distance(view.current, v), max_d));
    if (s > best_score) {
      best_score = s;
      best = v;
    }
  }
  return best;
}

NodeId decide_greedy_bayesian(const LocalView& view) {
  const double mean_len = view.graph.mean_edge_length();
  return argmax_neighbor(view, [&](NodeId v) {
    return bayes_gain(view.idleness[v], view.graph.distance(view.current, v), mean_len);
  });
}

NodeId decide_state_exchange_bayesian(const LocalView& view, IntentionBoard& board,
                                      const StrategyParams& params) {
  const double mean_len = view.graph.mean_edge_length();
  NodeId goal = argmax_neighbor(view, [&](NodeId v) {
    return bayes_gain(view.idleness[v], view.graph.distance(view.current, v), mean_len) /
           std::pow(params.intention_discount, board.others_heading_to(v, view.robot));
  });
  board.set(view.robot, goal);
  return goal;
}

double LearningMemory::estimate(NodeId v, double alpha) const {
  const int k = visits.at(v);
  if (k == 0) return 0.0;
  return expected_idleness[v] / (1.0 - std::pow(1.0 - alpha, k));
}

NodeId decide_bayesian_learning(const LocalView& view, LearningMemory& memory,
                                IntentionBoard& board, const StrategyParams& params) {
  NodeId goal;
  // Always consume the exploration draw so the stream advances uniformly.
  if (view.rng.uniform() < params.cbls_epsilon) {
    goal = decide_random(view);
  } else {
    const double mean_len = view.graph.mean_edge_length();
    const double a = params.cbls_alpha;
    goal = argmax_neighbor(view, [&](NodeId v) {
      const double learned = memory.visits[v] == 0 ? view.idleness[v] : memory.estimate(v, a);
      const double x = (1.0 - a) * view.idleness[v] + a * learned;
      return bayes_gain(x, view.graph.distance(view.current, v), mean_len) /
             std::pow(params.intention_discount, board.others_heading_to(v, view.robot));
    });
  }
  board.set(view.robot, goal);
  return goal;
}

NodeId decide_cyclic(const LocalView& view, CyclicMemory& memory, const Route& route,
                     std::size_t robot_count, bool spaced_entry) {
  const auto len = route.nodes.size();
  if (len == 0) return view.current;
  if (!memory.joined) {
    const std::size_t spacing = spaced_entry ? len / std::max<std::size_t>(robot_count, 1) : 0;
    memory.route_index = (static_cast<std::size_t>(view.robot) * spacing) % len;
    memory.joined = true;
    if (route.nodes[memory.route_index] != view.current) return route.nodes[memory.route_index];
  }
  memory.route_index = (memory.route_index + 1) % len;
  return route.nodes[memory.route_index];
}

NodeId decide_task_greedy(const LocalView& view, TaskMemory& memory, ClaimBoard& claims,
                          double distance_weight) {
  if (memory.task) {
    claims.release(*memory.task, view.robot);
    memory.task.reset();
  }
  const auto m = static_cast<NodeId>(view.graph.node_count());
  NodeId best = view.current;
  double best_u = kNegInf;
  for (NodeId v = 0; v < m; ++v) {
    if (v == view.current || claims.claimed_by_other(v, view.robot)) continue;
    double u = view.idleness[v] - distance_weight * view.graph.distance(view.current, v);
    if (u > best_u) {
      best_u = u;
      best = v;
    }
  }
  if (best == view.current) return decide_reactive(view);
  claims.claim(best, view.robot);
  memory.task = best;
  return best;
}

NodeId decide_task_auction(const LocalView& view, TaskMemory& memory, ClaimBoard& claims) {
  if (memory.task) {
    if (*memory.task != view.current) return *memory.task;
    claims.release(*memory.task, view.robot);
    memory.task.reset();
  }
  // Reactive step that passes over neighbours already awarded to someone else.
  NodeId best = view.current;
  double best_idl = kNegInf;
  bool best_free = false;
  for (const auto& nb : view.graph.neighbors(view.current)) {
    const bool free = !claims.claimed_by_other(nb.node, view.robot);
    const double idl = view.idleness[nb.node];
    if ((free && !best_free) || (free == best_free && idl > best_idl)) {
      best = nb.node;
      best_idl = idl;
      best_free = free;
    }
  }
  return best;
}

NodeId decide_next(StrategyKind kind, DecisionContext& ctx) {
  const LocalView& v = ctx.view;
  const StrategyParams& p = ctx.params;
  switch (kind) {
    case StrategyKind::RAND: return decide_random(v);
    case StrategyKind::CR: return decide_reactive(v);
    case StrategyKind::HCR: return decide_heuristic_reactive(v);
    case StrategyKind::HPCC: return decide_heuristic_pathfinder(v);
    case StrategyKind::GBS: return decide_greedy_bayesian(v);
    case StrategyKind::SEBS: return decide_state_exchange_bayesian(v, ctx.board.intentions, p);
    case StrategyKind::CBLS:
      return decide_bayesian_learning(v, ctx.memory.learning, ctx.board.intentions, p);
    case StrategyKind::CGG:
      if (ctx.route == nullptr) throw std::logic_error("CGG requires a cyclic route");
      return decide_cyclic(v, ctx.memory.cyclic, *ctx.route, ctx.robot_count, p.cgg_spaced_entry);
    case StrategyKind::DTAG:
      return decide_task_greedy(v, ctx.memory.task, ctx.board.claims, p.task_distance_weight);
    case StrategyKind::DTAP: return decide_task_auction(v, ctx.memory.task, ctx.board.claims);
  }
  throw std::logic_error("decide_next: unknown strategy kind");
}

void observe_visit(StrategyKind kind, StrategyMemory& memory, NodeId node,
                   double idleness_at_visit, const StrategyParams& params) {
  if (kind != StrategyKind::CBLS) return;
  auto& e = memory.learning.expected_idleness.at(node);
  e = (1.0 - params.cbls_alpha) * e + params.cbls_alpha * idleness_at_visit;
  ++memory.learning.visits.at(node);
}

std::vector<AuctionAward> run_auction(const PatrolGraph& g, std::span<const Position> positions,
                                      std::span<const bool> active, std::span<TaskMemory> tasks,
                                      ClaimBoard& claims, std::span<const double> idleness,
                                      double range, double distance_weight) {
  const auto n = positions.size();
  const auto m = static_cast<NodeId>(g.node_count());
  std::vector<Point> where(n);
  for (std::size_t i = 0; i < n; ++i) where[i] = location(g, positions[i]);

  std::vector<bool> connected(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(where[i], where[j]) <= range) connected[i] = connected[j] = true;
    }
  }

  std::vector<AuctionAward> awards;

  // Auctioned node: most idle unclaimed node.
  std::optional<NodeId> lot;
  double lot_idl = kNegInf;
  for (NodeId v = 0; v < m; ++v) {
    if (!claims.claimed(v) && idleness[v] > lot_idl) {
      lot_idl = idleness[v];
      lot = v;
    }
  }
  if (lot) {
    std::optional<RobotId> winner;
    double best_bid = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
      if (!active[r] || tasks[r].task || !connected[r]) continue;
      double bid = distance_to(g, positions[r], *lot);
      if (bid < best_bid) {
        best_bid = bid;
        winner = static_cast<RobotId>(r);
      }
    }
    if (winner) {
      claims.claim(*lot, *winner);
      tasks[*winner].task = *lot;
      awards.push_back({*winner, *lot, false});
    }
  }

  for (std::size_t r = 0; r < n; ++r) {
    if (!active[r] || tasks[r].task || connected[r]) continue;
    std::optional<NodeId> best;
    double best_u = kNegInf;
    for (NodeId v = 0; v < m; ++v) {
      if (claims.claimed(v)) continue;
      if (positions[r].at_node() && positions[r].from == v) continue;
      double u = idleness[v] - distance_weight * distance_to(g, positions[r], v);
      if (u > best_u) {
        best_u = u;
        best = v;
      }
    }
    if (best) {
      claims.claim(*best, static_cast<RobotId>(r));
      tasks[r].task = *best;
      awards.push_back({static_cast<RobotId>(r), *best, true});
    }
  }
  return awards;
}

}  // namespace patrol
