#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "patrol/graph.hpp"
#include "patrol/types.hpp"

using patrol::EdgeSpec;
using patrol::PatrolGraph;
using patrol::Point;

namespace {

PatrolGraph path3() {
  return PatrolGraph::build({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, {}}, {1, 2, {}}});
}

// Random connected graph: spanning tree plus extra edges, small integer lengths
// so equal-cost alternatives are common.
struct RandomGraph {
  int m;
  std::vector<oracle::WeightedEdge> edges;
  PatrolGraph graph;
};

RandomGraph random_graph(std::mt19937_64& gen, int m, int extra) {
  std::vector<Point> pts(m);
  for (int i = 0; i < m; ++i) pts[i] = {static_cast<double>(i), static_cast<double>(i * i % 7)};
  std::vector<EdgeSpec> specs;
  std::vector<oracle::WeightedEdge> edges;
  std::set<std::pair<int, int>> seen;
  auto add = [&](int a, int b) {
    if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second) return;
    double w = 1.0 + static_cast<double>(gen() % 3);
    specs.push_back({static_cast<patrol::NodeId>(a), static_cast<patrol::NodeId>(b), w});
    edges.push_back({a, b, w});
  };
  for (int v = 1; v < m; ++v) add(v, static_cast<int>(gen() % v));
  for (int k = 0; k < extra; ++k) add(static_cast<int>(gen() % m), static_cast<int>(gen() % m));
  return {m, edges, PatrolGraph::build(pts, specs)};
}

}  // namespace

TEST(PatrolGraph, EuclideanLength) {
  auto g = PatrolGraph::build({{0, 0}, {3, 4}}, {{0, 1, {}}});
  EXPECT_DOUBLE_EQ(*g.edge_length(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(g.distance(1, 0), 5.0);
  EXPECT_FALSE(g.edges()[0].explicit_length);
}

TEST(PatrolGraph, ExplicitLengthOverrides) {
  auto g = PatrolGraph::build({{0, 0}, {3, 4}}, {{0, 1, 7.5}});
  EXPECT_DOUBLE_EQ(*g.edge_length(0, 1), 7.5);
  EXPECT_TRUE(g.edges()[0].explicit_length);
}

TEST(PatrolGraph, RejectsInvalid) {
  std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
  EXPECT_THROW(PatrolGraph::build(tri, {{0, 1, {}}, {1, 2, {}}, {1, 0, {}}}), patrol::GraphError);
  EXPECT_THROW(PatrolGraph::build(tri, {{0, 1, {}}, {1, 1, {}}, {1, 2, {}}}), patrol::GraphError);
  EXPECT_THROW(PatrolGraph::build(tri, {{0, 1, {}}, {1, 3, {}}}), patrol::GraphError);
  EXPECT_THROW(PatrolGraph::build(tri, {{0, 1, {}}}), patrol::GraphError);
  EXPECT_THROW(PatrolGraph::build(tri, {{0, 1, -1.0}, {1, 2, {}}}), patrol::GraphError);
  EXPECT_THROW(PatrolGraph::build({}, {}), patrol::GraphError);
}

TEST(PatrolGraph, NeighborsSortedAndDegree) {
  auto g = PatrolGraph::build({{0, 0}, {1, 0}, {2, 0}, {1, 1}}, {{1, 3, {}}, {1, 0, {}}, {1, 2, {}}});
  auto nbs = g.neighbors(1);
  ASSERT_EQ(nbs.size(), 3u);
  EXPECT_EQ(nbs[0].node, 0u);
  EXPECT_EQ(nbs[1].node, 2u);
  EXPECT_EQ(nbs[2].node, 3u);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_DOUBLE_EQ(g.average_degree(), 1.5);
  EXPECT_FALSE(g.edge_length(0, 2).has_value());
}

TEST(ShortestPath, Identity) {
  auto g = path3();
  auto p = patrol::shortest_path(g, 1, 1);
  EXPECT_EQ(p.nodes, std::vector<patrol::NodeId>{1});
  EXPECT_EQ(p.length, 0.0);
}

TEST(ShortestPath, OnlyPath) {
  auto p = patrol::shortest_path(path3(), 0, 2);
  EXPECT_EQ(p.nodes, (std::vector<patrol::NodeId>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(p.length, 2.0);
}

TEST(ShortestPath, TieGoesToLexicographicallySmaller) {
  // Square 0-1-3 and 0-2-3 of equal cost.
  auto g = PatrolGraph::build({{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                              {{0, 2, {}}, {2, 3, {}}, {0, 1, {}}, {1, 3, {}}});
  EXPECT_EQ(patrol::shortest_path(g, 0, 3).nodes, (std::vector<patrol::NodeId>{0, 1, 3}));
  EXPECT_EQ(patrol::shortest_path(g, 3, 0).nodes, (std::vector<patrol::NodeId>{3, 1, 0}));
}

TEST(ShortestPath, InvalidIdThrows) {
  EXPECT_THROW(patrol::shortest_path(path3(), 0, 9), patrol::GraphError);
}

TEST(ShortestPath, MatchesBruteForceEnumeration) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 4 + static_cast<int>(gen() % 5);
    auto rg = random_graph(gen, m, m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        auto [len, path] = oracle::brute_shortest(m, rg.edges, a, b);
        auto got = patrol::shortest_path(rg.graph, a, b);
        ASSERT_NEAR(got.length, len, 1e-9);
        ASSERT_NEAR(rg.graph.distance(a, b), len, 1e-9);
        std::vector<int> nodes(got.nodes.begin(), got.nodes.end());
        ASSERT_EQ(nodes, path) << "trial " << trial << " " << a << "->" << b;
      }
    }
  }
}
