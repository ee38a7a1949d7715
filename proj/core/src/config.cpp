#include "patrol/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace patrol {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = s.find(',', pos);
    auto item = trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename T>
T parse_value(std::string_view v, std::size_t line, std::string_view key) {
  if constexpr (std::is_same_v<T, bool>) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(fmt::format("config line {}: expected true or false for '{}'", line, key));
  } else {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ConfigError(fmt::format("config line {}: invalid value '{}' for '{}'", line, v, key));
    }
    return out;
  }
}

}  // namespace

std::int64_t ExperimentConfig::ticks_per_second() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  const double tps = 1.0 / dt;
  const double rounded = std::round(tps);
  if (rounded < 1.0 || std::abs(tps - rounded) > 1e-9 * rounded) {
    throw ConfigError(fmt::format("dt = {} does not divide one second evenly", dt));
  }
  return static_cast<std::int64_t>(rounded);
}

std::int64_t ExperimentConfig::seconds_to_ticks(double seconds) const {
  return static_cast<std::int64_t>(std::llround(seconds * static_cast<double>(ticks_per_second())));
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw ConfigError("replicates must be >= 1");
  if (n_robots < 2) throw ConfigError("n_robots must be >= 2");
  if (!(duration >= 0.0)) throw ConfigError("duration must be >= 0");
  if (!(speed > 0.0)) throw ConfigError("speed must be > 0");
  if (!(launch_interval >= 0.0)) throw ConfigError("launch_interval must be >= 0");
  if (!(quorum > 0.0 && quorum <= 1.0)) throw ConfigError("quorum must be in (0, 1]");
  if (strategies.empty()) throw ConfigError("no strategies selected");
  if (noise_levels.empty()) throw ConfigError("no noise levels selected");
  for (double p : noise_levels) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("noise level {} outside [0, 1]", p));
  }
  if (!(strategy.cbls_alpha >= 0.0 && strategy.cbls_alpha <= 1.0)) {
    throw ConfigError("cbls_alpha must be in [0, 1]");
  }
  if (!(strategy.cbls_epsilon >= 0.0 && strategy.cbls_epsilon <= 1.0)) {
    throw ConfigError("cbls_epsilon must be in [0, 1]");
  }
  if (!(strategy.dtap_period > 0.0)) throw ConfigError("dtap_period must be > 0");
  if (!(strategy.intention_discount >= 1.0)) throw ConfigError("intention_discount must be >= 1");
  if (!(strategy.task_distance_weight >= 0.0)) {
    throw ConfigError("task_distance_weight must be >= 0");
  }
  comm.validate();
  (void)ticks_per_second();
  auto whole = [&](double s, const char* what) {
    double ticks = s * static_cast<double>(ticks_per_second());
    if (std::abs(ticks - std::round(ticks)) > 1e-6) {
      throw ConfigError(fmt::format("{} = {} is not a whole number of ticks", what, s));
    }
  };
  whole(duration, "duration");
  whole(strategy.dtap_period, "dtap_period");
  whole(launch_interval, "launch_interval");
}

void ExperimentConfig::validate(const PatrolGraph& g) const {
  validate();
  if (!g.valid_node(anomaly_node)) {
    throw ConfigError(fmt::format("anomaly_node {} not in map ({} nodes)", anomaly_node,
                                  g.node_count()));
  }
  if (!g.valid_node(start_node)) {
    throw ConfigError(fmt::format("start_node {} not in map ({} nodes)", start_node,
                                  g.node_count()));
  }
}

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(fmt::format("config line {}: duplicate key '{}'", line_no, key));
    }

    auto num = [&]<typename T>(T& out) { out = parse_value<T>(value, line_no, key); };

    if (key == "map") {
      std::filesystem::path p{std::string(value)};
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      cfg.map_path = p.lexically_normal().string();
    } else if (key == "map_seed") {
      num(cfg.map_seed);
    } else if (key == "strategies") {
      cfg.strategies.clear();
      if (value == "all") {
        cfg.strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
      } else {
        for (auto item : split_list(value)) {
          auto k = parse_strategy_kind(item);
          if (!k) throw ConfigError(fmt::format("config line {}: unknown strategy '{}'", line_no, item));
          cfg.strategies.push_back(*k);
        }
      }
    } else if (key == "noise_levels") {
      cfg.noise_levels.clear();
      for (auto item : split_list(value)) {
        cfg.noise_levels.push_back(parse_value<double>(item, line_no, key));
      }
    } else if (key == "replicates") {
      num(cfg.replicates);
    } else if (key == "duration") {
      num(cfg.duration);
    } else if (key == "n_robots") {
      num(cfg.n_robots);
    } else if (key == "comm_range") {
      num(cfg.comm.range);
    } else if (key == "comm_timeout") {
      num(cfg.comm.timeout);
    } else if (key == "quorum") {
      num(cfg.quorum);
    } else if (key == "anomaly_node") {
      num(cfg.anomaly_node);
    } else if (key == "start_node") {
      num(cfg.start_node);
    } else if (key == "master_seed") {
      num(cfg.master_seed);
    } else if (key == "dt") {
      num(cfg.dt);
    } else if (key == "speed") {
      num(cfg.speed);
    } else if (key == "launch_interval") {
      num(cfg.launch_interval);
    } else if (key == "cbls_alpha") {
      num(cfg.strategy.cbls_alpha);
    } else if (key == "cbls_epsilon") {
      num(cfg.strategy.cbls_epsilon);
    } else if (key == "dtap_period") {
      num(cfg.strategy.dtap_period);
    } else if (key == "intention_discount") {
      num(cfg.strategy.intention_discount);
    } else if (key == "task_distance_weight") {
      num(cfg.strategy.task_distance_weight);
    } else if (key == "cgg_spaced_entry") {
      num(cfg.strategy.cgg_spaced_entry);
    } else {
      throw ConfigError(fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
  }
  cfg.strategy.dtap_range = cfg.comm.range;
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), dir.empty() ? "." : dir);
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::string out;
  auto line = [&](std::string_view k, const auto& v) { out += fmt::format("{} = {}\n", k, v); };
  if (cfg.map_path) line("map", *cfg.map_path);
  line("map_seed", cfg.map_seed);
  std::vector<std::string_view> names;
  for (auto k : cfg.strategies) names.push_back(to_string(k));
  line("strategies", fmt::format("{}", fmt::join(names, ", ")));
  line("noise_levels", fmt::format("{}", fmt::join(cfg.noise_levels, ", ")));
  line("replicates", cfg.replicates);
  line("duration", cfg.duration);
  line("n_robots", cfg.n_robots);
  line("comm_range", cfg.comm.range);
  line("comm_timeout", cfg.comm.timeout);
  line("quorum", cfg.quorum);
  line("anomaly_node", cfg.anomaly_node);
  line("start_node", cfg.start_node);
  line("master_seed", cfg.master_seed);
  line("dt", cfg.dt);
  line("speed", cfg.speed);
  line("launch_interval", cfg.launch_interval);
  line("cbls_alpha", cfg.strategy.cbls_alpha);
  line("cbls_epsilon", cfg.strategy.cbls_epsilon);
  line("dtap_period", cfg.strategy.dtap_period);
  line("intention_discount", cfg.strategy.intention_discount);
  line("task_distance_weight", cfg.strategy.task_distance_weight);
  line("cgg_spaced_entry", cfg.strategy.cgg_spaced_entry ? "true" : "false");
  return out;
}

PatrolGraph resolve_map(const ExperimentConfig& cfg) {
  return cfg.map_path ? load_map(*cfg.map_path) : generate_default_map(cfg.map_seed);
}

}  // namespace patrol
