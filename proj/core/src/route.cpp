#include "patrol/graph.hpp"

#include <algorithm>
#include <limits>

namespace patrol {

std::vector<NodeId> nearest_neighbor_order(const PatrolGraph& g) {
  const auto m = g.node_count();
  std::vector<bool> picked(m, false);
  std::vector<NodeId> order;
  order.reserve(m);
  NodeId cur = 0;
  picked[cur] = true;
  order.push_back(cur);
  while (order.size() < m) {
    NodeId best = cur;
    double best_d = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < m; ++v) {
      if (picked[v]) continue;
      double d = g.distance(cur, v);
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    picked[best] = true;
    order.push_back(best);
    cur = best;
  }
  return order;
}

double tour_length(const PatrolGraph& g, std::span<const NodeId> order) {
  if (order.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    total += g.distance(order[i], order[(i + 1) % order.size()]);
  }
  return total;
}

std::vector<NodeId> two_opt(const PatrolGraph& g, std::vector<NodeId> order) {
  const auto n = order.size();
  if (n < 4) return order;
  bool improved = true;
  while (improved) {
    improved = false;
    // Keep order[0] fixed so the route still starts at node 0.
    for (std::size_t i = 0; i + 2 < n && !improved; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        NodeId a = order[i], b = order[i + 1];
        NodeId c = order[j], d = order[(j + 1) % n];
        double delta = g.distance(a, c) + g.distance(b, d) - g.distance(a, b) - g.distance(c, d);
        if (delta < -1e-9) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       order.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
          break;
        }
      }
    }
  }
  return order;
}

Route expand_tour(const PatrolGraph& g, std::span<const NodeId> order) {
  Route r;
  if (order.empty()) return r;
  if (order.size() == 1) {
    r.nodes.push_back(order.front());
    return r;
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto leg = shortest_path(g, order[i], order[(i + 1) % order.size()]);
    // Drop the leg's last node; it is the first node of the next leg.
    r.nodes.insert(r.nodes.end(), leg.nodes.begin(), leg.nodes.end() - 1);
    r.length += leg.length;
  }
  return r;
}

Route build_cyclic_route(const PatrolGraph& g) {
  auto order = two_opt(g, nearest_neighbor_order(g));
  return expand_tour(g, order);
}

bool is_valid_route(const PatrolGraph& g, const Route& r) {
  if (r.nodes.empty()) return false;
  std::vector<bool> covered(g.node_count(), false);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    NodeId a = r.nodes[i];
    if (!g.valid_node(a)) return false;
    covered[a] = true;
    if (r.nodes.size() > 1) {
      NodeId b = r.nodes[(i + 1) % r.nodes.size()];
      if (!g.edge_length(a, b)) return false;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

}  // namespace patrol
