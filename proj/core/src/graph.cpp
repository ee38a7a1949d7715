#include "patrol/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace patrol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

}  // namespace

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

PatrolGraph PatrolGraph::build(std::vector<Point> nodes, std::vector<EdgeSpec> edges) {
  if (nodes.empty()) throw GraphError("graph has no nodes");
  const auto m = nodes.size();

  PatrolGraph g;
  g.positions_ = std::move(nodes);
  g.adjacency_.resize(m);

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& spec : edges) {
    if (spec.a >= m || spec.b >= m) {
      throw GraphError(fmt::format("edge {}-{} references a missing node", spec.a, spec.b));
    }
    if (spec.a == spec.b) throw GraphError(fmt::format("self-loop at node {}", spec.a));
    auto key = std::minmax(spec.a, spec.b);
    if (!seen.insert(key).second) {
      throw GraphError(fmt::format("duplicate edge {}-{}", key.first, key.second));
    }
    Edge e{spec.a, spec.b, 0.0, spec.length.has_value()};
    if (spec.length) {
      if (!(*spec.length > 0.0) || !std::isfinite(*spec.length)) {
        throw GraphError(fmt::format("edge {}-{} has non-positive length", spec.a, spec.b));
      }
      e.length = *spec.length;
    } else {
      e.length = patrol::distance(g.positions_[spec.a], g.positions_[spec.b]);
      if (!(e.length > 0.0)) {
        throw GraphError(fmt::format("edge {}-{} joins coincident nodes", spec.a, spec.b));
      }
    }
    g.adjacency_[e.a].push_back({e.b, e.length});
    g.adjacency_[e.b].push_back({e.a, e.length});
    g.edges_.push_back(e);
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& l, const Neighbor& r) { return l.node < r.node; });
  }

  // Connectivity.
  std::vector<bool> reached(m, false);
  std::vector<NodeId> stack{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& nb : g.adjacency_[v]) {
      if (!reached[nb.node]) {
        reached[nb.node] = true;
        ++count;
        stack.push_back(nb.node);
      }
    }
  }
  if (count != m) {
    throw GraphError(fmt::format("graph is disconnected ({} of {} nodes reachable from 0)",
                                 count, m));
  }

  g.compute_shortest_paths();
  return g;
}

void PatrolGraph::compute_shortest_paths() {
  const auto m = node_count();
  dist_.assign(m * m, kInf);
  next_.assign(m * m, 0);

  using Item = std::pair<double, NodeId>;
  for (NodeId s = 0; s < m; ++s) {
    double* d = &dist_[index(s, 0)];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > d[u]) continue;
      for (const auto& nb : adjacency_[u]) {
        double alt = du + nb.length;
        if (alt < d[nb.node]) {
          d[nb.node] = alt;
          pq.push({alt, nb.node});
        }
      }
    }
  }

  // Symmetrize so dist(a,b) == dist(b,a) bit-for-bit.
  for (NodeId a = 0; a < m; ++a) {
    for (NodeId b = a + 1; b < m; ++b) {
      double v = std::min(dist_[index(a, b)], dist_[index(b, a)]);
      dist_[index(a, b)] = v;
      dist_[index(b, a)] = v;
    }
  }

  // Smallest-id neighbour lying on some shortest path gives the
  // lexicographically smallest shortest path when followed greedily.
  for (NodeId from = 0; from < m; ++from) {
    for (NodeId to = 0; to < m; ++to) {
      if (from == to) {
        next_[index(from, to)] = from;
        continue;
      }
      const double target = dist_[index(from, to)];
      for (const auto& nb : adjacency_[from]) {
        if (nearly_equal(nb.length + dist_[index(nb.node, to)], target)) {
          next_[index(from, to)] = nb.node;
          break;
        }
      }
    }
  }
}

std::optional<double> PatrolGraph::edge_length(NodeId a, NodeId b) const {
  for (const auto& nb : neighbors(a)) {
    if (nb.node == b) return nb.length;
  }
  return std::nullopt;
}

double PatrolGraph::average_degree() const noexcept {
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(node_count());
}

double PatrolGraph::mean_edge_length() const noexcept {
  if (edges_.empty()) return 0.0;
  double total = 0.0;
  for (const auto& e : edges_) total += e.length;
  return total / static_cast<double>(edges_.size());
}

ShortestPath shortest_path(const PatrolGraph& g, NodeId from, NodeId to) {
  if (!g.valid_node(from) || !g.valid_node(to)) {
    throw GraphError(fmt::format("shortest_path: invalid node id {} or {}", from, to));
  }
  ShortestPath out;
  out.nodes.push_back(from);
  NodeId cur = from;
  while (cur != to) {
    NodeId nxt = g.next_hop(cur, to);
    out.length += *g.edge_length(cur, nxt);
    out.nodes.push_back(nxt);
    cur = nxt;
  }
  return out;
}

}  // namespace patrol
