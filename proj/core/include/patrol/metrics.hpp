#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "patrol/beliefs.hpp"
#include "patrol/rational.hpp"
#include "patrol/world.hpp"

namespace patrol {

/// All robots' beliefs at one instant: row-major robots x nodes.
struct BeliefMatrix {
  std::size_t robots = 0;
  std::size_t nodes = 0;
  std::vector<Belief> cells;

  std::span<const Belief> row(std::size_t r) const { return {cells.data() + r * nodes, nodes}; }
  static BeliefMatrix from(std::span<const RobotState> robots);
  static BeliefMatrix from(std::span<const BeliefVector> rows);
};

/// Mean |belief - truth| over every robot-node pair.
Rational system_error(const BeliefMatrix& beliefs, const WorldState& world);

struct ConfusionCounts {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0, u = 0;

  std::int64_t total() const noexcept { return tp + tn + fp + fn + u; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts classify(const BeliefMatrix& beliefs, const WorldState& world);

/// 2(tp+tn) / (2(tp+tn) + fp + fn + u/2). Throws on all-zero counts.
Rational f_score(const ConfusionCounts& c);

/// Half-away-from-zero rounding to 4 decimals, as used in reports.
double round4(double x);

/// Snapshots of all beliefs, one per instant at which any belief changed.
/// The first snapshot is the initial state.
struct BeliefHistory {
  struct Snapshot {
    double t = 0.0;
    BeliefMatrix beliefs;
  };
  std::vector<Snapshot> snapshots;
};

struct ConsensusReport {
  double quorum = 0.85;
  std::size_t required = 0;
  std::optional<double> t_full_consensus;
  bool tp_consensus = false;
  std::vector<NodeId> fp_consensus_nodes;
};

/// Robots needed for a quorum: ceil(quorum * n).
std::size_t quorum_size(double quorum, std::size_t robots);

/// Number of robots whose entire belief vector equals the truth.
std::size_t robots_matching_truth(const BeliefMatrix& beliefs, const WorldState& world);

ConsensusReport consensus_report(const BeliefHistory& history, const WorldState& world,
                                 double quorum);

/// Final-state part of the consensus report (tp flag and false-positive nodes).
void final_consensus(const BeliefMatrix& final_beliefs, const WorldState& world,
                     ConsensusReport& report);

// Communication graph -------------------------------------------------------

/// Weighted undirected graph over robots, W symmetric with zero diagonal.
class CommGraph {
 public:
  CommGraph(std::size_t n, std::vector<double> weights);

  std::size_t size() const noexcept { return n_; }
  double weight(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  /// L = D - W, row-major.
  std::vector<double> laplacian() const;

 private:
  std::size_t n_;
  std::vector<double> w_;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  int sweeps = 0;
};

/// Cyclic Jacobi eigenvalues of a symmetric row-major n*n matrix; iterates
/// until every off-diagonal magnitude is below `tolerance`.
EigenResult jacobi_eigenvalues(std::span<const double> matrix, std::size_t n,
                               double tolerance = 1e-10, int max_sweeps = 100);

/// Second-smallest Laplacian eigenvalue (Fiedler value); n >= 2.
double algebraic_connectivity(const CommGraph& g);

// Statistics ------------------------------------------------------------------

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

class StatisticsError : public Error {
 public:
  using Error::Error;
};

/// Sample Pearson r with a two-sided p-value from Student's t (n-2 dof).
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

/// Regularized incomplete beta I_x(a, b) via Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof`.
double student_t_two_sided(double t, double dof);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);
double median(std::vector<double> xs);

}  // namespace patrol
