#include <gtest/gtest.h>

#include "patrol/config.hpp"

using namespace patrol;

TEST(Config, Defaults) {
  auto cfg = parse_config("");
  EXPECT_EQ(cfg.strategies.size(), 10u);
  EXPECT_EQ(cfg.noise_levels, (std::vector<double>{0.0, 0.05, 0.10, 0.20}));
  EXPECT_EQ(cfg.replicates, 20);
  EXPECT_EQ(cfg.duration, 3600.0);
  EXPECT_EQ(cfg.n_robots, 8u);
  EXPECT_EQ(cfg.comm.range, 5.0);
  EXPECT_EQ(cfg.comm.timeout, 30.0);
  EXPECT_EQ(cfg.quorum, 0.85);
  EXPECT_EQ(cfg.anomaly_node, 30u);
  EXPECT_EQ(cfg.strategy.cbls_alpha, 0.3);
  EXPECT_EQ(cfg.strategy.cbls_epsilon, 0.1);
  EXPECT_EQ(cfg.strategy.dtap_period, 20.0);
  EXPECT_EQ(cfg.ticks_per_second(), 10);
  EXPECT_FALSE(cfg.map_path.has_value());
}

TEST(Config, ParsesKeys) {
  auto cfg = parse_config(
      "# comment\n"
      "strategies = CR, SEBS   # trailing comment\n"
      "noise_levels = 0.1\n"
      "replicates = 3\n"
      "map = maps/x.map\n"
      "comm_range = 7.5\n"
      "cgg_spaced_entry = true\n"
      "task_distance_weight = 2\n",
      "/base");
  EXPECT_EQ(cfg.strategies, (std::vector<StrategyKind>{StrategyKind::CR, StrategyKind::SEBS}));
  EXPECT_EQ(cfg.noise_levels, std::vector<double>{0.1});
  EXPECT_EQ(cfg.replicates, 3);
  EXPECT_EQ(*cfg.map_path, "/base/maps/x.map");
  EXPECT_EQ(cfg.comm.range, 7.5);
  EXPECT_EQ(cfg.strategy.dtap_range, 7.5);
  EXPECT_TRUE(cfg.strategy.cgg_spaced_entry);
  EXPECT_EQ(cfg.strategy.task_distance_weight, 2.0);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("colour = red\n"), ConfigError);
  EXPECT_THROW(parse_config("replicates = 2\nreplicates = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("replicates\n"), ConfigError);
  EXPECT_THROW(parse_config("replicates = two\n"), ConfigError);
  EXPECT_THROW(parse_config("replicates = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("n_robots = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("noise_levels = 0, 1.5\n"), ConfigError);
  EXPECT_THROW(parse_config("quorum = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("strategies = CR, FOO\n"), ConfigError);
  EXPECT_THROW(parse_config("dt = 0.3\n"), ConfigError);
  EXPECT_THROW(parse_config("duration = 10.05\n"), ConfigError);
  EXPECT_THROW(parse_config("cbls_alpha = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("cgg_spaced_entry = yes\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST(Config, ErrorNamesLine) {
  try {
    parse_config("replicates = 2\n\nbogus = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Config, TextRoundTrip) {
  auto cfg = parse_config("strategies = DTAP, CGG\nnoise_levels = 0, 0.2\nmaster_seed = 17\n"
                          "launch_interval = 5\ncbls_epsilon = 0.25\n");
  auto text = to_config_text(cfg);
  auto again = parse_config(text);
  EXPECT_EQ(to_config_text(again), text);
  EXPECT_EQ(again.master_seed, 17u);
  EXPECT_EQ(again.strategies, cfg.strategies);
  EXPECT_EQ(again.strategy.cbls_epsilon, 0.25);
}

TEST(Config, ValidateAgainstGraph) {
  auto cfg = parse_config("anomaly_node = 50\n");
  auto g = generate_default_map(0);
  EXPECT_THROW(cfg.validate(g), ConfigError);
}

TEST(Config, BundledConfigLoads) {
  auto cfg = load_config(PATROL_CONFIG_DIR "/default.cfg");
  auto g = resolve_map(cfg);
  EXPECT_EQ(g.node_count(), 40u);
  EXPECT_NO_THROW(cfg.validate(g));
}
