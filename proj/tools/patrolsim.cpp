// patrolsim: run, summarize and analyze multi-robot patrol experiments.
//
//   patrolsim simulate --config FILE [--strategy K] [--noise P] [--seed S] [--out DIR]
//   patrolsim summarize --runs DIR
//   patrolsim analyze --runs DIR
//   patrolsim genmap --seed S --out FILE

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "patrol/harness.hpp"

namespace fs = std::filesystem;

namespace {

class FileSink final : public patrol::EventSink {
 public:
  explicit FileSink(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw patrol::Error(fmt::format("cannot write event log '{}'", path));
  }
  void line(std::string_view text) override {
    out_.write(text.data(), static_cast<std::streamsize>(text.size()));
    out_.put('\n');
  }

 private:
  std::ofstream out_;
};

std::string to_text(auto&& writer) {
  std::ostringstream ss;
  writer(ss);
  return ss.str();
}

int cmd_simulate(const std::string& config_path, const std::string& strategy,
                 const std::string& noise, const std::string& seed, const std::string& out_dir,
                 unsigned jobs, bool events) {
  auto cfg = patrol::load_config(config_path);
  if (!strategy.empty()) {
    auto k = patrol::parse_strategy_kind(strategy);
    if (!k) throw patrol::ConfigError(fmt::format("unknown strategy '{}'", strategy));
    cfg.strategies = {*k};
  }
  if (!noise.empty()) cfg.noise_levels = {std::stod(noise)};
  if (!seed.empty()) cfg.master_seed = std::stoull(seed);
  cfg.validate();
  auto graph = patrol::resolve_map(cfg);

  fs::create_directories(fs::path(out_dir));
  patrol::MatrixOptions opts;
  opts.jobs = jobs;
  if (events) {
    fs::create_directories(fs::path(out_dir) / "events");
    auto path_of = [out_dir](const patrol::CellId& c) {
      return (fs::path(out_dir) / "events" / (patrol::cell_name(c) + ".log")).string();
    };
    opts.event_log_path = path_of;
    opts.event_sink = [path_of](const patrol::CellId& c) -> std::unique_ptr<patrol::EventSink> {
      return std::make_unique<FileSink>(path_of(c));
    };
  }
  auto result = patrol::run_matrix(cfg, graph, opts);
  patrol::write_run_directory(out_dir, cfg, result);
  std::cout << fmt::format("{} runs written to {}\n", result.records.size(), out_dir);
  return 0;
}

int cmd_summarize(const std::string& dir) {
  auto records = patrol::read_runs(dir);
  auto summary = patrol::summarize(records);
  patrol::write_file((fs::path(dir) / "summary.csv").string(),
                     to_text([&](std::ostream& o) { patrol::write_summary_csv(o, summary); }));
  patrol::write_file((fs::path(dir) / "correlation.csv").string(),
                     to_text([&](std::ostream& o) { patrol::write_correlation_csv(o, summary); }));
  patrol::write_summary_csv(std::cout, summary);
  std::cout << '\n';
  patrol::write_correlation_csv(std::cout, summary);
  return 0;
}

int cmd_analyze(const std::string& dir) {
  auto records = patrol::read_runs(dir);
  auto summary = patrol::summarize(records);
  std::size_t robots = 0;
  auto counts = patrol::read_pair_counts(dir, records, robots);
  auto edges = patrol::social_edges(records, counts, robots);
  auto put = [&](const char* name, auto&& writer) {
    patrol::write_file((fs::path(dir) / name).string(), to_text(writer));
  };
  put("fig3_connectivity.csv", [&](std::ostream& o) { patrol::write_fig3_connectivity(o, records); });
  put("fig4_consensus_vs_lambda2.csv",
      [&](std::ostream& o) { patrol::write_fig4_consensus(o, records); });
  put("fig5_tp_fp.csv", [&](std::ostream& o) { patrol::write_fig5_tp_fp(o, summary); });
  put("social_edges.csv", [&](std::ostream& o) { patrol::write_social_edges(o, edges); });
  put("correlation.csv", [&](std::ostream& o) { patrol::write_correlation_csv(o, summary); });
  patrol::write_correlation_csv(std::cout, summary);
  return 0;
}

int cmd_genmap(std::uint64_t seed, const std::string& out) {
  auto g = patrol::generate_default_map(seed);
  patrol::write_file(out, patrol::serialize_map(g));
  std::cout << fmt::format("{} nodes, {} edges, average degree {:.3f} -> {}\n", g.node_count(),
                           g.edge_count(), g.average_degree(), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot patrol with collective anomaly perception"};
  app.require_subcommand(1);

  std::string config, strategy, noise, seed, out_dir = "runs";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool no_events = false;
  auto* sim = app.add_subcommand("simulate", "Run the experiment matrix");
  sim->add_option("--config", config, "Config file (key = value)")->required();
  sim->add_option("--strategy", strategy, "Restrict to one strategy");
  sim->add_option("--noise", noise, "Restrict to one noise level");
  sim->add_option("--seed", seed, "Override the master seed");
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_option("--jobs", jobs, "Concurrent runs");
  sim->add_flag("--no-events", no_events, "Skip per-run event logs");

  std::string runs_dir;
  auto* sum = app.add_subcommand("summarize", "Aggregate runs.csv into summary tables");
  sum->add_option("--runs", runs_dir, "Run directory")->required();
  auto* ana = app.add_subcommand("analyze", "Write correlation and figure data files");
  ana->add_option("--runs", runs_dir, "Run directory")->required();

  std::uint64_t map_seed = 0;
  std::string map_out;
  auto* gen = app.add_subcommand("genmap", "Write a generated default map");
  gen->add_option("--seed", map_seed, "Generator seed")->required();
  gen->add_option("--out", map_out, "Output map file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(config, strategy, noise, seed, out_dir, jobs, !no_events);
    if (*sum) return cmd_summarize(runs_dir);
    if (*ana) return cmd_analyze(runs_dir);
    if (*gen) return cmd_genmap(map_seed, map_out);
  } catch (const std::exception& e) {
    std::cerr << "patrolsim: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
