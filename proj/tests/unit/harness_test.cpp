#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "patrol/harness.hpp"

using namespace patrol;

namespace {

ExperimentConfig small_matrix() {
  auto cfg = parse_config("strategies = CR, DTAP, SEBS\nnoise_levels = 0, 0.2\nreplicates = 3\n"
                          "duration = 400\nmaster_seed = 9\n");
  return cfg;
}

std::string runs_text(const std::vector<RunRecord>& recs) {
  std::ostringstream ss;
  write_runs_csv(ss, recs);
  return ss.str();
}

}  // namespace

TEST(Matrix, CellCountAndOrder) {
  auto cfg = parse_config("");
  auto cells = matrix_cells(cfg);
  EXPECT_EQ(cells.size(), 800u);
  EXPECT_EQ(cells.front().strategy, StrategyKind::CBLS);
  EXPECT_EQ(cells[1].replicate, 1);
  EXPECT_EQ(cells[20].noise, 0.05);
  EXPECT_EQ(cells.back().strategy, StrategyKind::SEBS);
}

TEST(Matrix, ParallelEqualsSerial) {
  auto cfg = small_matrix();
  auto g = generate_default_map(0);
  MatrixOptions serial, parallel;
  parallel.jobs = 4;
  auto a = run_matrix(cfg, g, serial);
  auto b = run_matrix(cfg, g, parallel);
  ASSERT_EQ(a.records.size(), 18u);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.pair_counts, b.pair_counts);
  EXPECT_EQ(runs_text(a.records), runs_text(b.records));
}

TEST(Matrix, FailingCellReportsSeed) {
  auto cfg = small_matrix();
  auto g = generate_default_map(0);
  MatrixOptions o;
  o.event_sink = [](const CellId& c) -> std::unique_ptr<EventSink> {
    if (c.strategy == StrategyKind::DTAP) throw std::runtime_error("disk full");
    return nullptr;
  };
  try {
    run_matrix(cfg, g, o);
    FAIL();
  } catch (const Error& e) {
    std::string what = e.what();
    auto seed = cell_seed(cfg.master_seed, {StrategyKind::DTAP, 0.0, 0});
    EXPECT_NE(what.find("DTAP_n0_r00"), std::string::npos) << what;
    EXPECT_NE(what.find(std::to_string(seed)), std::string::npos) << what;
  }
}

TEST(RunsCsv, RoundTripIsExact) {
  auto cfg = small_matrix();
  auto g = generate_default_map(0);
  auto res = run_matrix(cfg, g);
  auto text = runs_text(res.records);
  auto parsed = parse_runs_csv(text);
  ASSERT_EQ(parsed.size(), res.records.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) EXPECT_EQ(parsed[i], res.records[i]);
  EXPECT_EQ(runs_text(parsed), text);

  std::ostringstream a, b;
  write_summary_csv(a, summarize(res.records));
  write_summary_csv(b, summarize(parsed));
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunsCsv, Errors) {
  EXPECT_THROW(parse_runs_csv(""), Error);
  EXPECT_THROW(parse_runs_csv("a,b\n"), Error);
  std::string h = std::string(kRunsHeader) + "\n";
  EXPECT_THROW(parse_runs_csv(h + "CR,0,0,1,2,3\n"), Error);
  EXPECT_THROW(parse_runs_csv(h + "ZZ,0,0,1,2,0.5,1,3,,1,0\n"), Error);
  EXPECT_THROW(parse_runs_csv(h + "CR,x,0,1,2,0.5,1,3,,1,0\n"), Error);
  auto ok = parse_runs_csv(h + "CR,0.05,2,11,2.5,0.5,1,3,,1,0\n");
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_FALSE(ok[0].t_consensus.has_value());
  EXPECT_EQ(ok[0].replicate, 2);
}

TEST(Summary, MeansMatchDirectRecomputation) {
  auto cfg = small_matrix();
  auto g = generate_default_map(0);
  auto recs = parse_runs_csv(runs_text(run_matrix(cfg, g).records));
  auto s = summarize(recs);
  ASSERT_EQ(s.rows.size(), 6u);
  for (const auto& row : s.rows) {
    double idl = 0, f = 0, lam = 0, fp = 0, n = 0;
    for (const auto& r : recs) {
      if (r.strategy != row.strategy || r.noise != row.noise) continue;
      idl += r.avg_graph_idleness;
      f += r.f_score;
      lam += r.lambda2;
      fp += static_cast<double>(r.fp_consensus_count);
      n += 1;
    }
    EXPECT_EQ(row.runs, 3u);
    EXPECT_NEAR(row.idleness_mean, idl / n, 1e-9);
    EXPECT_NEAR(row.f_score_mean, f / n, 1e-9);
    EXPECT_NEAR(row.lambda2_mean, lam / n, 1e-9);
    EXPECT_NEAR(row.fp_consensus_mean, fp / n, 1e-9);
    EXPECT_FALSE(row.single_replicate);
  }
  ASSERT_EQ(s.correlations.size(), 2u);
  EXPECT_EQ(s.correlations[0].noise, 0.0);
}

TEST(Summary, SingleReplicateFlagged) {
  auto cfg = small_matrix();
  cfg.replicates = 1;
  auto g = generate_default_map(0);
  auto s = summarize(run_matrix(cfg, g).records);
  for (const auto& row : s.rows) {
    EXPECT_TRUE(row.single_replicate);
    EXPECT_EQ(row.idleness_sd, 0.0);
    EXPECT_EQ(row.f_score_sd, 0.0);
  }
  std::ostringstream out;
  write_summary_csv(out, s);
  EXPECT_NE(out.str().find("single_replicate_sd_zero"), std::string::npos);
}

TEST(PairCounts, RoundTrip) {
  std::vector<double> w{0, 2, 0, 2, 0, 5, 0, 5, 0};
  std::ostringstream out;
  write_pair_counts_csv(out, 3, w);
  EXPECT_EQ(parse_pair_counts_csv(out.str(), 3), w);
  EXPECT_THROW(parse_pair_counts_csv("# robots=3\ni,j,count\n0,0,1\n", 3), Error);
}

TEST(RunDirectory, WriteAndReadBack) {
  auto cfg = small_matrix();
  auto g = generate_default_map(0);
  auto res = run_matrix(cfg, g);
  auto dir = (std::filesystem::temp_directory_path() / "patrol_harness_test").string();
  std::filesystem::remove_all(dir);
  write_run_directory(dir, cfg, res);
  auto recs = read_runs(dir);
  EXPECT_EQ(recs, res.records);
  std::size_t n = 0;
  auto counts = read_pair_counts(dir, recs, n);
  EXPECT_EQ(n, cfg.n_robots);
  EXPECT_EQ(counts, res.pair_counts);
  auto back = parse_config(read_file(dir + "/config.txt"));
  EXPECT_EQ(to_config_text(back), to_config_text(cfg));

  auto edges = social_edges(recs, counts, n);
  ASSERT_FALSE(edges.empty());
  for (const auto& e : edges) {
    EXPECT_LT(e.i, e.j);
    EXPECT_GT(e.mean_count, 0.0);
  }
  std::filesystem::remove_all(dir);
}

TEST(Figures, Headers) {
  auto cfg = small_matrix();
  auto g = generate_default_map(0);
  auto res = run_matrix(cfg, g);
  std::ostringstream f3, f4, f5;
  write_fig3_connectivity(f3, res.records);
  write_fig4_consensus(f4, res.records);
  write_fig5_tp_fp(f5, summarize(res.records));
  const auto t3 = f3.str(), t4 = f4.str(), t5 = f5.str();
  EXPECT_EQ(std::count(t3.begin(), t3.end(), '\n'), 19);
  EXPECT_EQ(t3.substr(0, t3.find('\n')), "strategy,noise,replicate,lambda2");
  EXPECT_EQ(t4.substr(0, t4.find('\n')), "noise,strategy,replicate,lambda2,t_consensus");
  EXPECT_EQ(std::count(t5.begin(), t5.end(), '\n'), 7);
}
