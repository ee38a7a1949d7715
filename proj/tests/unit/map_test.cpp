#include <gtest/gtest.h>

#include "patrol/graph.hpp"
#include "patrol/harness.hpp"
#include "patrol/types.hpp"

namespace {

int error_line(const std::string& text) {
  try {
    patrol::parse_map(text);
  } catch (const patrol::MapError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

}  // namespace

TEST(ParseMap, Basic) {
  auto g = patrol::parse_map("# two nodes\nnode 0 0 0\nnode 1 3 4\n\nedge 0 1\n");
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_DOUBLE_EQ(g.distance(0, 1), 5.0);
}

TEST(ParseMap, ExplicitLength) {
  auto g = patrol::parse_map("node 0 0 0\nnode 1 3 4\nedge 0 1 6.5\n");
  EXPECT_DOUBLE_EQ(g.distance(0, 1), 6.5);
}

TEST(ParseMap, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("node 0 0 0\nnode 1 1 x\n"), 2);
  EXPECT_EQ(error_line("node 0 0 0\nnode 1 1 0\nedge 0 1\nbogus 1 2\n"), 4);
  EXPECT_EQ(error_line("node 0 0 0\nnode 0 1 0\n"), 2);
  EXPECT_EQ(error_line("node 0 0 0\nnode 1 1 0\nedge 0 2\n"), 3);
  EXPECT_EQ(error_line("node 0 0 0\nnode 1 1 0\nnode 2 0 1\nedge 0 1\nedge 1 2\nedge 1 0\n"), 6);
  EXPECT_EQ(error_line("node 0 0 0\nnode 1 1 0\nedge 0 1 -2\n"), 3);
  EXPECT_EQ(error_line("node 0 0 0\nnode 1 1 0\nedge 0 1 2 3\n"), 3);
}

TEST(ParseMap, Disconnected) {
  EXPECT_THROW(patrol::parse_map("node 0 0 0\nnode 1 1 0\nnode 2 5 5\nedge 0 1\n"), patrol::MapError);
}

TEST(ParseMap, NonContiguousIds) {
  EXPECT_THROW(patrol::parse_map("node 0 0 0\nnode 2 1 0\nedge 0 2\n"), patrol::MapError);
}

TEST(SerializeMap, RoundTrip) {
  auto g = patrol::parse_map("node 0 0 0\nnode 1 3 4\nnode 2 3.25 -1\nedge 0 1\nedge 1 2 9\n");
  auto text = patrol::serialize_map(g);
  auto h = patrol::parse_map(text);
  EXPECT_EQ(patrol::serialize_map(h), text);
  EXPECT_DOUBLE_EQ(h.distance(1, 2), 9.0);
  EXPECT_EQ(h.position(2).x, 3.25);
}

TEST(GenerateMap, SeedZeroInvariants) {
  auto g = patrol::generate_default_map(0);
  EXPECT_EQ(g.node_count(), 40u);
  EXPECT_NEAR(g.average_degree(), 2.2, 0.1);
  for (const auto& e : g.edges()) {
    EXPECT_GE(e.length, 3.0);
    EXPECT_LE(e.length, 15.0);
    EXPECT_NEAR(e.length, patrol::distance(g.position(e.a), g.position(e.b)), 1e-9);
  }
}

TEST(GenerateMap, Deterministic) {
  EXPECT_EQ(patrol::serialize_map(patrol::generate_default_map(11)),
            patrol::serialize_map(patrol::generate_default_map(11)));
  EXPECT_NE(patrol::serialize_map(patrol::generate_default_map(11)),
            patrol::serialize_map(patrol::generate_default_map(12)));
}

TEST(GenerateMap, DegreeRangeOverSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = patrol::generate_default_map(seed);
    std::size_t degree_sum = 0;
    for (patrol::NodeId v = 0; v < g.node_count(); ++v) degree_sum += g.degree(v);
    double avg = static_cast<double>(degree_sum) / static_cast<double>(g.node_count());
    EXPECT_GE(avg, 2.1) << seed;
    EXPECT_LE(avg, 2.3) << seed;
  }
}

TEST(GenerateMap, BundledMapIsSeedZero) {
  auto bundled = patrol::read_file(PATROL_DEFAULT_MAP);
  auto g = patrol::parse_map(bundled);
  EXPECT_EQ(g.node_count(), 40u);
  EXPECT_NEAR(g.average_degree(), 2.2, 0.1);
  EXPECT_EQ(patrol::serialize_map(g), patrol::serialize_map(patrol::generate_default_map(0)));
}
