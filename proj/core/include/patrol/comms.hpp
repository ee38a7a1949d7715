#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "patrol/graph.hpp"
#include "patrol/world.hpp"

namespace patrol {

struct CommConfig {
  double range = 5.0;     // metres, straight line, walls ignored
  double timeout = 30.0;  // seconds between exchanges of the same pair

  void validate() const;
};

using RobotPair = std::pair<RobotId, RobotId>;

/// Time of the last exchange for every unordered robot pair.
class PairClock {
 public:
  explicit PairClock(std::size_t robots = 0) : n_(robots), last_(robots * robots) {}

  std::optional<double> last(RobotId i, RobotId j) const { return last_[index(i, j)]; }
  void record(RobotId i, RobotId j, double t) { last_[index(i, j)] = t; }
  std::size_t robot_count() const noexcept { return n_; }

 private:
  std::size_t index(RobotId i, RobotId j) const {
    if (i > j) std::swap(i, j);
    return std::size_t{i} * n_ + j;
  }
  std::size_t n_;
  std::vector<std::optional<double>> last_;
};

struct ContactEvent {
  double t = 0.0;
  RobotId i = 0;  // i < j
  RobotId j = 0;
};

/// Append-only record of pairwise exchanges.
class ContactLog {
 public:
  explicit ContactLog(std::size_t robots = 0) : n_(robots) {}

  void append(double t, RobotId i, RobotId j);
  std::span<const ContactEvent> events() const noexcept { return events_; }
  std::size_t robot_count() const noexcept { return n_; }

  /// Symmetric n*n row-major matrix of exchange counts, zero diagonal.
  std::vector<double> pair_counts() const;

 private:
  std::size_t n_;
  std::vector<ContactEvent> events_;
};

/// Pairs (i < j) within range whose timeout has elapsed, ascending by (i, j).
std::vector<RobotPair> eligible_pairs(std::span<const Point> positions, const PairClock& clock,
                                      double t, const CommConfig& cfg);

/// Both robots adopt the element-wise fusion of their belief vectors.
void exchange(RobotState& a, RobotState& b);

/// Callback fired after each exchange, e.g. for event logging.
struct ExchangeObserver {
  virtual ~ExchangeObserver() = default;
  virtual void on_exchange(double t, const RobotState& a, const RobotState& b) = 0;
};

/// Apply every eligible exchange for this tick, sequentially in ascending
/// (i, j) order; later pairs see the results of earlier ones. Returns the
/// number of exchanges performed.
std::size_t tick_comms(std::span<RobotState> robots, std::span<const Point> positions,
                       PairClock& clock, ContactLog& log, double t, const CommConfig& cfg,
                       ExchangeObserver* observer = nullptr);

}  // namespace patrol
