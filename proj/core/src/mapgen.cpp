#include <algorithm>
#include <cmath>
#include <optional>
#include <numeric>

#include <fmt/format.h>

#include "patrol/graph.hpp"
#include "patrol/rng.hpp"

namespace patrol {

namespace {

constexpr std::size_t kColumns = 8;
constexpr std::size_t kRows = 5;
constexpr double kSpacing = 9.0;
constexpr double kJitter = 1.5;
constexpr std::size_t kChords = 5;  // 39 tree edges + 5 -> average degree 2.2
constexpr int kMaxAttempts = 1000;

struct DisjointSet {
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

template <typename T>
void shuffle(std::vector<T>& v, RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

std::optional<PatrolGraph> attempt(RngStream& rng) {
  const std::size_t m = kColumns * kRows;
  std::vector<Point> pts;
  pts.reserve(m);
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t c = 0; c < kColumns; ++c) {
      // Coordinates snapped to centimetres so the map file stays readable.
      double x = static_cast<double>(c) * kSpacing + rng.uniform(-kJitter, kJitter);
      double y = static_cast<double>(r) * kSpacing + rng.uniform(-kJitter, kJitter);
      pts.push_back({std::round(x * 100.0) / 100.0, std::round(y * 100.0) / 100.0});
    }
  }

  std::vector<std::pair<NodeId, NodeId>> candidates;
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t c = 0; c < kColumns; ++c) {
      auto v = static_cast<NodeId>(r * kColumns + c);
      if (c + 1 < kColumns) candidates.emplace_back(v, v + 1);
      if (r + 1 < kRows) candidates.emplace_back(v, static_cast<NodeId>(v + kColumns));
    }
  }
  shuffle(candidates, rng);

  DisjointSet ds(m);
  std::vector<std::pair<NodeId, NodeId>> tree, rest;
  for (auto e : candidates) (ds.unite(e.first, e.second) ? tree : rest).push_back(e);
  if (rest.size() < kChords) return std::nullopt;
  tree.insert(tree.end(), rest.begin(), rest.begin() + kChords);
  std::sort(tree.begin(), tree.end());

  std::vector<EdgeSpec> specs;
  for (auto [a, b] : tree) {
    double len = distance(pts[a], pts[b]);
    if (len < 3.0 || len > 15.0) return std::nullopt;
    specs.push_back({a, b, std::nullopt});
  }
  auto g = PatrolGraph::build(std::move(pts), std::move(specs));
  if (g.average_degree() < 2.1 || g.average_degree() > 2.3) return std::nullopt;
  return g;
}

}  // namespace

PatrolGraph generate_default_map(std::uint64_t seed) {
  RngStream rng(seed, StreamPurpose::MapGen, 0);
  for (int i = 0; i < kMaxAttempts; ++i) {
    if (auto g = attempt(rng)) return std::move(*g);
  }
  throw GraphError(fmt::format("map generator failed after {} attempts (seed {})",
                               kMaxAttempts, seed));
}

}  // namespace patrol
