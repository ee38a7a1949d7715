#include "patrol/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace patrol {

BeliefMatrix BeliefMatrix::from(std::span<const RobotState> robots) {
  BeliefMatrix m;
  m.robots = robots.size();
  m.nodes = robots.empty() ? 0 : robots.front().beliefs.size();
  m.cells.reserve(m.robots * m.nodes);
  for (const auto& r : robots) m.cells.insert(m.cells.end(), r.beliefs.begin(), r.beliefs.end());
  return m;
}

BeliefMatrix BeliefMatrix::from(std::span<const BeliefVector> rows) {
  BeliefMatrix m;
  m.robots = rows.size();
  m.nodes = rows.empty() ? 0 : rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != m.nodes) throw std::logic_error("BeliefMatrix: ragged rows");
    m.cells.insert(m.cells.end(), row.begin(), row.end());
  }
  return m;
}

namespace {

void check_dims(const BeliefMatrix& beliefs, const WorldState& world) {
  if (beliefs.nodes != world.node_count() || beliefs.cells.size() != beliefs.robots * beliefs.nodes) {
    throw std::logic_error("belief matrix does not match world dimensions");
  }
}

}  // namespace

Rational system_error(const BeliefMatrix& beliefs, const WorldState& world) {
  check_dims(beliefs, world);
  if (beliefs.cells.empty()) throw std::logic_error("system_error: no beliefs");
  std::int64_t half_units_off = 0;
  for (std::size_t r = 0; r < beliefs.robots; ++r) {
    auto row = beliefs.row(r);
    for (std::size_t v = 0; v < beliefs.nodes; ++v) {
      int truth = world.truth[v] ? 2 : 0;
      half_units_off += std::abs(half_units(row[v]) - truth);
    }
  }
  return Rational(half_units_off, 2 * static_cast<std::int64_t>(beliefs.cells.size()));
}

ConfusionCounts classify(const BeliefMatrix& beliefs, const WorldState& world) {
  check_dims(beliefs, world);
  ConfusionCounts c;
  for (std::size_t r = 0; r < beliefs.robots; ++r) {
    auto row = beliefs.row(r);
    for (std::size_t v = 0; v < beliefs.nodes; ++v) {
      const bool truth = world.truth[v];
      switch (row[v]) {
        case Belief::True: (truth ? c.tp : c.fp)++; break;
        case Belief::False: (truth ? c.fn : c.tn)++; break;
        case Belief::Uncertain: c.u++; break;
      }
    }
  }
  return c;
}

Rational f_score(const ConfusionCounts& c) {
  if (c.total() == 0) throw std::logic_error("f_score: all counts are zero");
  // Scaled by 2 to keep u/2 integral.
  const std::int64_t correct = 4 * (c.tp + c.tn);
  return Rational(correct, correct + 2 * c.fp + 2 * c.fn + c.u);
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::size_t quorum_size(double quorum, std::size_t robots) {
  if (!(quorum > 0.0 && quorum <= 1.0)) {
    throw std::invalid_argument(fmt::format("quorum must be in (0, 1], got {}", quorum));
  }
  return static_cast<std::size_t>(std::ceil(quorum * static_cast<double>(robots) - 1e-9));
}

std::size_t robots_matching_truth(const BeliefMatrix& beliefs, const WorldState& world) {
  check_dims(beliefs, world);
  std::size_t count = 0;
  for (std::size_t r = 0; r < beliefs.robots; ++r) {
    auto row = beliefs.row(r);
    bool all = true;
    for (std::size_t v = 0; v < beliefs.nodes && all; ++v) {
      all = row[v] == belief_from_observation(world.truth[v]);
    }
    if (all) ++count;
  }
  return count;
}

void final_consensus(const BeliefMatrix& final_beliefs, const WorldState& world,
                     ConsensusReport& report) {
  check_dims(final_beliefs, world);
  report.fp_consensus_nodes.clear();
  report.tp_consensus = false;
  for (NodeId v = 0; v < final_beliefs.nodes; ++v) {
    std::size_t holders = 0;
    for (std::size_t r = 0; r < final_beliefs.robots; ++r) {
      if (final_beliefs.row(r)[v] == Belief::True) ++holders;
    }
    if (holders < report.required) continue;
    if (v == world.anomaly_node) {
      report.tp_consensus = true;
    } else if (!world.truth[v]) {
      report.fp_consensus_nodes.push_back(v);
    }
  }
}

ConsensusReport consensus_report(const BeliefHistory& history, const WorldState& world,
                                 double quorum) {
  ConsensusReport rep;
  rep.quorum = quorum;
  if (history.snapshots.empty()) return rep;
  rep.required = quorum_size(quorum, history.snapshots.front().beliefs.robots);
  for (const auto& snap : history.snapshots) {
    if (robots_matching_truth(snap.beliefs, world) >= rep.required) {
      rep.t_full_consensus = snap.t;
      break;
    }
  }
  final_consensus(history.snapshots.back().beliefs, world, rep);
  return rep;
}

CommGraph::CommGraph(std::size_t n, std::vector<double> weights) : n_(n), w_(std::move(weights)) {
  if (w_.size() != n_ * n_) throw std::logic_error("CommGraph: weight matrix is not n*n");
  for (std::size_t i = 0; i < n_; ++i) {
    if (w_[i * n_ + i] != 0.0) throw std::logic_error("CommGraph: non-zero diagonal");
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (w_[i * n_ + j] != w_[j * n_ + i] || w_[i * n_ + j] < 0.0) {
        throw std::logic_error("CommGraph: weights must be symmetric and non-negative");
      }
    }
  }
}

std::vector<double> CommGraph::laplacian() const {
  std::vector<double> l(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      l[i * n_ + j] = -w_[i * n_ + j];
      degree += w_[i * n_ + j];
    }
    l[i * n_ + i] = degree;
  }
  return l;
}

double algebraic_connectivity(const CommGraph& g) {
  if (g.size() < 2) throw std::logic_error("algebraic_connectivity needs at least two robots");
  auto l = g.laplacian();
  auto eig = jacobi_eigenvalues(l, g.size());
  return std::max(eig.values[1], 0.0);
}

}  // namespace patrol
