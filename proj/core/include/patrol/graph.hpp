#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patrol/types.hpp"

namespace patrol {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) noexcept;

/// Input edge: `length` absent means Euclidean distance between endpoints.
struct EdgeSpec {
  NodeId a = 0;
  NodeId b = 0;
  std::optional<double> length;
};

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double length = 0.0;
  bool explicit_length = false;
};

struct Neighbor {
  NodeId node = 0;
  double length = 0.0;
};

/// Undirected, simple, connected metric graph of patrol nodes.
///
/// Node ids are 0..m-1. All-pairs shortest distances and a next-hop table
/// are computed once at construction; when several minimum-length walks
/// exist the lexicographically smallest node sequence is the one reported.
/// Immutable after construction.
class PatrolGraph {
 public:
  /// Validates every invariant; throws GraphError on violation.
  static PatrolGraph build(std::vector<Point> nodes, std::vector<EdgeSpec> edges);

  std::size_t node_count() const noexcept { return positions_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  Point position(NodeId v) const { return positions_.at(v); }
  std::span<const Point> positions() const noexcept { return positions_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Neighbors sorted by ascending id.
  std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  std::optional<double> edge_length(NodeId a, NodeId b) const;

  double distance(NodeId a, NodeId b) const { return dist_[index(a, b)]; }
  /// First node after `from` on the canonical shortest path; `from` if equal.
  NodeId next_hop(NodeId from, NodeId to) const { return next_[index(from, to)]; }

  double average_degree() const noexcept;
  double mean_edge_length() const noexcept;

  bool valid_node(NodeId v) const noexcept { return v < node_count(); }

 private:
  PatrolGraph() = default;
  std::size_t index(NodeId a, NodeId b) const { return std::size_t{a} * node_count() + b; }
  void compute_shortest_paths();

  std::vector<Point> positions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> dist_;
  std::vector<NodeId> next_;
};

struct ShortestPath {
  std::vector<NodeId> nodes;
  double length = 0.0;
};

/// Minimum-length walk from `from` to `to`, ties broken toward the
/// lexicographically smallest id sequence.
ShortestPath shortest_path(const PatrolGraph& g, NodeId from, NodeId to);

/// Closed walk visiting every node at least once. `nodes` does not repeat the
/// start at the end; the walk closes from nodes.back() to nodes.front().
struct Route {
  std::vector<NodeId> nodes;
  double length = 0.0;
};

/// Nearest-neighbour visiting order over shortest-path distances, from node 0.
std::vector<NodeId> nearest_neighbor_order(const PatrolGraph& g);
/// 2-opt on a cyclic visiting order until no reversal shortens it.
std::vector<NodeId> two_opt(const PatrolGraph& g, std::vector<NodeId> order);
/// Cyclic length of a visiting order using shortest-path distances.
double tour_length(const PatrolGraph& g, std::span<const NodeId> order);
/// Expand a visiting order into a closed walk of adjacent nodes.
Route expand_tour(const PatrolGraph& g, std::span<const NodeId> order);

/// Deterministic cyclic patrol route: nearest neighbour + 2-opt, expanded.
Route build_cyclic_route(const PatrolGraph& g);

/// True when consecutive entries (cyclically) are adjacent and every node
/// appears at least once.
bool is_valid_route(const PatrolGraph& g, const Route& r);

// Map file I/O ---------------------------------------------------------------

/// Parse `node <id> <x> <y>` / `edge <a> <b> [length]` / `#` comment lines.
PatrolGraph parse_map(std::string_view text);
PatrolGraph load_map(const std::string& path);
/// Canonical text; edges carry an explicit length only when overridden.
std::string serialize_map(const PatrolGraph& g);

/// 40-node corridor-like map: jittered grid, random spanning tree plus chords,
/// average degree in [2.1, 2.3], edge lengths in [3, 15] m.
PatrolGraph generate_default_map(std::uint64_t seed);

}  // namespace patrol
