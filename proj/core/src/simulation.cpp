#include "patrol/simulation.hpp"

#include <bit>
#include <memory>

#include <fmt/format.h>

namespace patrol {

std::uint64_t cell_seed(std::uint64_t master_seed, const CellId& cell) {
  std::uint64_t h = hash_combine(master_seed, static_cast<std::uint64_t>(cell.strategy) + 1);
  h = hash_combine(h, std::bit_cast<std::uint64_t>(cell.noise + 0.0));  // folds -0.0
  return hash_combine(h, static_cast<std::uint64_t>(cell.replicate));
}

std::string cell_name(const CellId& cell) {
  return fmt::format("{}_n{}_r{:02}", to_string(cell.strategy), cell.noise, cell.replicate);
}

namespace {

std::string join_beliefs(const BeliefVector& v) {
  std::string out;
  out.reserve(v.size() * 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += to_string(v[i]);
  }
  return out;
}

class CommLogger final : public ExchangeObserver {
 public:
  explicit CommLogger(EventSink* sink) : sink_(sink) {}
  void on_exchange(double t, const RobotState& a, const RobotState& b) override {
    if (!sink_) return;
    sink_->line(fmt::format("{},comm,{},{},{}", t, a.id, b.id, join_beliefs(a.beliefs)));
  }

 private:
  EventSink* sink_;
};

std::size_t count_matching(const std::vector<RobotState>& robots, const WorldState& world) {
  std::size_t count = 0;
  for (const auto& r : robots) {
    bool all = true;
    for (std::size_t v = 0; v < r.beliefs.size() && all; ++v) {
      all = r.beliefs[v] == belief_from_observation(world.truth[v]);
    }
    if (all) ++count;
  }
  return count;
}

}  // namespace

RunResult run_one(const ExperimentConfig& cfg, const PatrolGraph& g, const CellId& cell,
                  const RunOptions& options) {
  cfg.validate(g);
  const std::size_t n = cfg.n_robots;
  const std::size_t m = g.node_count();
  const std::uint64_t seed = cell_seed(cfg.master_seed, cell);
  const auto world = WorldState::single_anomaly(m, cfg.anomaly_node);
  const StrategyKind kind = cell.strategy;

  const std::int64_t tps = cfg.ticks_per_second();
  const double dt = 1.0 / static_cast<double>(tps);
  const std::int64_t total_ticks = cfg.seconds_to_ticks(cfg.duration);
  const std::int64_t launch_ticks = cfg.seconds_to_ticks(cfg.launch_interval);
  const std::int64_t auction_ticks = cfg.seconds_to_ticks(cfg.strategy.dtap_period);

  std::vector<RobotState> robots;
  std::vector<StrategyMemory> memory;
  std::vector<RngStream> sensor_rng, strategy_rng;
  for (RobotId i = 0; i < n; ++i) {
    robots.push_back(make_robot(i, cfg.start_node, cfg.speed, m));
    memory.push_back(StrategyMemory::fresh(m));
    sensor_rng.emplace_back(seed, StreamPurpose::Sensor, i);
    strategy_rng.emplace_back(seed, StreamPurpose::Strategy, i);
  }
  CoordinationBoard board{IntentionBoard(n), ClaimBoard(m)};
  std::optional<Route> route;
  if (kind == StrategyKind::CGG) route = build_cyclic_route(g);

  IdlenessTracker tracker(m, 0.0);
  PairClock pair_clock(n);
  RunResult result;
  result.contacts = ContactLog(n);
  ConsensusReport& consensus = result.consensus;
  consensus.quorum = cfg.quorum;
  consensus.required = quorum_size(cfg.quorum, n);

  EventSink* sink = options.events;
  CommLogger comm_logger(sink);
  if (sink) sink->line("# t,event,robot,node_or_peer,belief_after");

  if (options.keep_history) {
    result.history.emplace();
    result.history->snapshots.push_back({0.0, BeliefMatrix::from(robots)});
  }

  std::vector<double> idleness(m, 0.0);
  std::vector<std::optional<NodeId>> arrivals(n);
  std::vector<Point> where(n);
  // Launch flags; a plain array so it can be viewed as std::span<const bool>.
  auto active = std::make_unique<bool[]>(n);

  auto set_goal = [&](RobotId i, NodeId goal, double t) {
    robots[i].goal = goal;
    if (sink) sink->line(fmt::format("{},goal,{},{},", t, i, goal));
  };

  for (std::int64_t tick = 1; tick <= total_ticks; ++tick) {
    const double t = static_cast<double>(tick) / static_cast<double>(tps);
    bool dirty = false;

    for (RobotId i = 0; i < n; ++i) {
      arrivals[i].reset();
      active[i] = tick > static_cast<std::int64_t>(i) * launch_ticks;
      if (active[i]) arrivals[i] = advance(robots[i], g, dt);
    }

    for (RobotId i = 0; i < n; ++i) {
      if (!arrivals[i]) continue;
      const NodeId v = *arrivals[i];
      observe_visit(kind, memory[i], v, tracker.idleness(v, t), cfg.strategy);
      const Belief before = robots[i].beliefs[v];
      const Belief after = visit(robots[i], tracker, world, v, cell.noise, sensor_rng[i], t);
      dirty |= before != after;
      if (sink) sink->line(fmt::format("{},visit,{},{},{}", t, i, v, to_string(after)));

      if (v == robots[i].goal) {
        tracker.idleness_into(t, idleness);
        LocalView view{i, v, g, idleness, strategy_rng[i]};
        DecisionContext ctx{view, memory[i], board, route ? &*route : nullptr, n, cfg.strategy};
        set_goal(i, decide_next(kind, ctx), t);
      }
    }

    if (kind == StrategyKind::DTAP && tick % auction_ticks == 0) {
      tracker.idleness_into(t, idleness);
      std::vector<Position> positions(n);
      std::vector<TaskMemory> tasks(n);
      for (std::size_t i = 0; i < n; ++i) {
        positions[i] = robots[i].position;
        tasks[i] = memory[i].task;
      }
      auto awards = run_auction(g, positions, std::span<const bool>(active.get(), n), tasks,
                                board.claims, idleness, cfg.strategy.dtap_range,
                                cfg.strategy.task_distance_weight);
      for (const auto& award : awards) {
        memory[award.robot].task = tasks[award.robot];
        set_goal(award.robot, award.node, t);
      }
    }

    for (std::size_t i = 0; i < n; ++i) where[i] = location(g, robots[i].position);
    if (tick_comms(robots, where, pair_clock, result.contacts, t, cfg.comm, &comm_logger) > 0) {
      dirty = true;
    }

    if (dirty) {
      if (result.history) result.history->snapshots.push_back({t, BeliefMatrix::from(robots)});
      if (!consensus.t_full_consensus && count_matching(robots, world) >= consensus.required) {
        consensus.t_full_consensus = t;
      }
    }

    if (tick % tps == 0) tracker.sample(t);
  }

  result.final_beliefs = BeliefMatrix::from(robots);
  final_consensus(result.final_beliefs, world, consensus);
  result.error = system_error(result.final_beliefs, world);
  result.confusion = classify(result.final_beliefs, world);
  result.f_score = f_score(result.confusion);

  RunRecord& rec = result.record;
  rec.strategy = kind;
  rec.noise = cell.noise;
  rec.replicate = cell.replicate;
  rec.seed = seed;
  rec.avg_graph_idleness = tracker.average();
  rec.final_error = result.error.to_double();
  rec.f_score = round4(result.f_score.to_double());
  rec.lambda2 = algebraic_connectivity(CommGraph(n, result.contacts.pair_counts()));
  rec.t_consensus = consensus.t_full_consensus;
  rec.tp_consensus = consensus.tp_consensus;
  rec.fp_consensus_count = consensus.fp_consensus_nodes.size();
  return result;
}

}  // namespace patrol
