#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "patrol/graph.hpp"

namespace patrol {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw MapError(line, fmt::format("invalid {} '{}'", what, tok));
  }
  return value;
}

}  // namespace

PatrolGraph parse_map(std::string_view text) {
  struct NodeLine {
    NodeId id;
    Point p;
    std::size_t line;
  };
  std::vector<NodeLine> nodes;
  std::vector<std::pair<EdgeSpec, std::size_t>> edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;

    if (tok[0] == "node") {
      if (tok.size() != 4) throw MapError(line_no, "expected 'node <id> <x> <y>'");
      NodeLine n{parse_number<NodeId>(tok[1], line_no, "node id"),
                 {parse_number<double>(tok[2], line_no, "x coordinate"),
                  parse_number<double>(tok[3], line_no, "y coordinate")},
                 line_no};
      nodes.push_back(n);
    } else if (tok[0] == "edge") {
      if (tok.size() != 3 && tok.size() != 4) {
        throw MapError(line_no, "expected 'edge <a> <b> [length]'");
      }
      EdgeSpec e{parse_number<NodeId>(tok[1], line_no, "edge endpoint"),
                 parse_number<NodeId>(tok[2], line_no, "edge endpoint"), std::nullopt};
      if (tok.size() == 4) {
        double len = parse_number<double>(tok[3], line_no, "edge length");
        if (!(len > 0.0)) throw MapError(line_no, "edge length must be positive");
        e.length = len;
      }
      edges.emplace_back(e, line_no);
    } else {
      throw MapError(line_no, fmt::format("unknown directive '{}'", tok[0]));
    }
    if (end == text.size()) break;
  }

  if (nodes.empty()) throw MapError(0, "map defines no nodes");

  std::vector<Point> points(nodes.size());
  std::vector<bool> defined(nodes.size(), false);
  for (const auto& n : nodes) {
    if (n.id >= nodes.size()) {
      throw MapError(n.line, fmt::format("node id {} breaks contiguous numbering 0..{}", n.id,
                                         nodes.size() - 1));
    }
    if (defined[n.id]) throw MapError(n.line, fmt::format("duplicate node id {}", n.id));
    defined[n.id] = true;
    points[n.id] = n.p;
  }

  std::vector<EdgeSpec> specs;
  specs.reserve(edges.size());
  for (const auto& [e, line] : edges) {
    if (e.a >= points.size() || e.b >= points.size()) {
      throw MapError(line, fmt::format("edge {}-{} references an undefined node", e.a, e.b));
    }
    if (e.a == e.b) throw MapError(line, fmt::format("self-loop at node {}", e.a));
    specs.push_back(e);
  }

  // Report duplicate edges with their line number before generic validation.
  {
    std::vector<std::pair<std::pair<NodeId, NodeId>, std::size_t>> keys;
    for (const auto& [e, line] : edges) keys.push_back({std::minmax(e.a, e.b), line});
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i) {
      if (keys[i].first == keys[i - 1].first) {
        auto later = std::max(keys[i].second, keys[i - 1].second);
        throw MapError(later, fmt::format("duplicate edge {}-{}", keys[i].first.first,
                                          keys[i].first.second));
      }
    }
  }

  try {
    return PatrolGraph::build(std::move(points), std::move(specs));
  } catch (const MapError&) {
    throw;
  } catch (const GraphError& e) {
    throw MapError(0, e.what());
  }
}

PatrolGraph load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapError(0, fmt::format("cannot open map file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

std::string serialize_map(const PatrolGraph& g) {
  std::string out;
  out += fmt::format("# patrol map: {} nodes, {} edges\n", g.node_count(), g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto p = g.position(v);
    out += fmt::format("node {} {} {}\n", v, p.x, p.y);
  }
  for (const auto& e : g.edges()) {
    if (e.explicit_length) {
      out += fmt::format("edge {} {} {}\n", e.a, e.b, e.length);
    } else {
      out += fmt::format("edge {} {}\n", e.a, e.b);
    }
  }
  return out;
}

}  // namespace patrol
