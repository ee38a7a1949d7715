#include "patrol/comms.hpp"

#include <fmt/format.h>

namespace patrol {

namespace {
// Absorbs rounding in tick-derived clock values.
constexpr double kTimeSlack = 1e-9;
}  // namespace

void CommConfig::validate() const {
  if (!(range > 0.0)) throw ConfigError(fmt::format("comm range must be > 0 (got {})", range));
  if (!(timeout >= 0.0)) {
    throw ConfigError(fmt::format("comm timeout must be >= 0 (got {})", timeout));
  }
}

void ContactLog::append(double t, RobotId i, RobotId j) {
  if (i > j) std::swap(i, j);
  events_.push_back({t, i, j});
}

std::vector<double> ContactLog::pair_counts() const {
  std::vector<double> w(n_ * n_, 0.0);
  for (const auto& e : events_) {
    w[e.i * n_ + e.j] += 1.0;
    w[e.j * n_ + e.i] += 1.0;
  }
  return w;
}

std::vector<RobotPair> eligible_pairs(std::span<const Point> positions, const PairClock& clock,
                                      double t, const CommConfig& cfg) {
  std::vector<RobotPair> out;
  const auto n = static_cast<RobotId>(positions.size());
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = i + 1; j < n; ++j) {
      if (distance(positions[i], positions[j]) > cfg.range) continue;
      if (auto last = clock.last(i, j); last && t - *last < cfg.timeout - kTimeSlack) continue;
      out.emplace_back(i, j);
    }
  }
  return out;
}

void exchange(RobotState& a, RobotState& b) {
  auto fused = fuse_vectors(a.beliefs, b.beliefs);
  a.beliefs = fused;
  b.beliefs = std::move(fused);
}

std::size_t tick_comms(std::span<RobotState> robots, std::span<const Point> positions,
                       PairClock& clock, ContactLog& log, double t, const CommConfig& cfg,
                       ExchangeObserver* observer) {
  auto pairs = eligible_pairs(positions, clock, t, cfg);
  for (auto [i, j] : pairs) {
    exchange(robots[i], robots[j]);
    clock.record(i, j, t);
    log.append(t, i, j);
    if (observer) observer->on_exchange(t, robots[i], robots[j]);
  }
  return pairs.size();
}

}  // namespace patrol
