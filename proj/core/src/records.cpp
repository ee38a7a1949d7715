#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "patrol/harness.hpp"

namespace patrol {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? line.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(fmt::format("line {}: invalid {} '{}'", line, what, tok));
  }
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;
    fn(line, line_no);
  }
}

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

}  // namespace

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kRunsHeader << '\n';
  for (const auto& r : records) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.strategy), r.noise,
               r.replicate, r.seed, r.avg_graph_idleness, r.final_error, r.f_score, r.lambda2,
               opt(r.t_consensus), r.tp_consensus ? 1 : 0, r.fp_consensus_count);
  }
}

std::vector<RunRecord> parse_runs_csv(std::string_view text) {
  std::vector<RunRecord> records;
  bool header_seen = false;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (line.empty()) return;
    if (!header_seen) {
      if (line != kRunsHeader) throw Error(fmt::format("runs.csv line {}: unexpected header", no));
      header_seen = true;
      return;
    }
    auto f = split(line, ',');
    if (f.size() != 11) throw Error(fmt::format("runs.csv line {}: expected 11 fields", no));
    RunRecord r;
    auto kind = parse_strategy_kind(f[0]);
    if (!kind) throw Error(fmt::format("runs.csv line {}: unknown strategy '{}'", no, f[0]));
    r.strategy = *kind;
    r.noise = parse_field<double>(f[1], no, "noise");
    r.replicate = parse_field<int>(f[2], no, "replicate");
    r.seed = parse_field<std::uint64_t>(f[3], no, "seed");
    r.avg_graph_idleness = parse_field<double>(f[4], no, "avg_graph_idleness");
    r.final_error = parse_field<double>(f[5], no, "final_error");
    r.f_score = parse_field<double>(f[6], no, "f_score");
    r.lambda2 = parse_field<double>(f[7], no, "lambda2");
    if (!f[8].empty()) r.t_consensus = parse_field<double>(f[8], no, "t_consensus");
    r.tp_consensus = parse_field<int>(f[9], no, "tp_consensus") != 0;
    r.fp_consensus_count = parse_field<std::size_t>(f[10], no, "fp_consensus_count");
    records.push_back(std::move(r));
  });
  if (!header_seen) throw Error("runs.csv is empty");
  return records;
}

void write_summary_csv(std::ostream& out, const MatrixSummary& summary) {
  out << "strategy,noise,runs,idleness_mean,idleness_sd,f_score_mean,f_score_sd,"
         "tp_consensus_rate,fp_consensus_mean,lambda2_mean,lambda2_median,consensus_runs,"
         "t_consensus_mean,note\n";
  for (const auto& r : summary.rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.strategy), r.noise,
               r.runs, r.idleness_mean, r.idleness_sd, r.f_score_mean, r.f_score_sd,
               r.tp_consensus_rate, r.fp_consensus_mean, r.lambda2_mean, r.lambda2_median,
               r.consensus_runs, opt(r.t_consensus_mean),
               r.single_replicate ? "single_replicate_sd_zero" : "");
  }
}

void write_correlation_csv(std::ostream& out, const MatrixSummary& summary) {
  out << "noise,pairs,pearson_r,p_value,note\n";
  for (const auto& c : summary.correlations) {
    if (c.correlation) {
      fmt::print(out, "{},{},{},{},\n", c.noise, c.lambda2.size(), c.correlation->r,
                 c.correlation->p_value);
    } else {
      fmt::print(out, "{},{},,,{}\n", c.noise, c.lambda2.size(), c.note);
    }
  }
}

void write_pair_counts_csv(std::ostream& out, std::size_t n, std::span<const double> counts) {
  fmt::print(out, "# robots={}\ni,j,count\n", n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (counts[i * n + j] > 0) fmt::print(out, "{},{},{}\n", i, j, counts[i * n + j]);
    }
  }
}

std::vector<double> parse_pair_counts_csv(std::string_view text, std::size_t n) {
  std::vector<double> w(n * n, 0.0);
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (line.empty() || line.front() == '#' || line == "i,j,count") return;
    auto f = split(line, ',');
    if (f.size() != 3) throw Error(fmt::format("contacts line {}: expected i,j,count", no));
    auto i = parse_field<std::size_t>(f[0], no, "i");
    auto j = parse_field<std::size_t>(f[1], no, "j");
    auto c = parse_field<double>(f[2], no, "count");
    if (i >= n || j >= n || i == j) throw Error(fmt::format("contacts line {}: bad pair", no));
    w[i * n + j] = w[j * n + i] = c;
  });
  return w;
}

void write_fig3_connectivity(std::ostream& out, std::span<const RunRecord> records) {
  out << "strategy,noise,replicate,lambda2\n";
  for (const auto& r : records) {
    fmt::print(out, "{},{},{},{}\n", to_string(r.strategy), r.noise, r.replicate, r.lambda2);
  }
}

void write_fig4_consensus(std::ostream& out, std::span<const RunRecord> records) {
  out << "noise,strategy,replicate,lambda2,t_consensus\n";
  for (const auto& r : records) {
    if (!r.t_consensus) continue;
    fmt::print(out, "{},{},{},{},{}\n", r.noise, to_string(r.strategy), r.replicate, r.lambda2,
               *r.t_consensus);
  }
}

void write_fig5_tp_fp(std::ostream& out, const MatrixSummary& summary) {
  out << "strategy,noise,runs,tp_consensus_rate,fp_consensus_mean\n";
  for (const auto& r : summary.rows) {
    fmt::print(out, "{},{},{},{},{}\n", to_string(r.strategy), r.noise, r.runs,
               r.tp_consensus_rate, r.fp_consensus_mean);
  }
}

std::vector<SocialEdge> social_edges(std::span<const RunRecord> records,
                                     std::span<const std::vector<double>> pair_counts,
                                     std::size_t n) {
  if (records.size() != pair_counts.size()) throw Error("social_edges: size mismatch");
  std::map<std::pair<int, double>, std::pair<std::vector<double>, std::size_t>> acc;
  std::vector<std::pair<int, double>> order;
  for (std::size_t k = 0; k < records.size(); ++k) {
    std::pair key{static_cast<int>(records[k].strategy), records[k].noise};
    auto [it, inserted] = acc.try_emplace(key, std::vector<double>(n * n, 0.0), 0);
    if (inserted) order.push_back(key);
    for (std::size_t c = 0; c < n * n; ++c) it->second.first[c] += pair_counts[k][c];
    ++it->second.second;
  }
  std::vector<SocialEdge> edges;
  for (const auto& [key, val] : acc) {
    const auto& [sum, runs] = val;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sum[i * n + j] == 0.0) continue;
        edges.push_back({static_cast<StrategyKind>(key.first), key.second, i, j,
                         sum[i * n + j] / static_cast<double>(runs)});
      }
    }
  }
  return edges;
}

void write_social_edges(std::ostream& out, std::span<const SocialEdge> edges) {
  out << "strategy,noise,i,j,mean_count\n";
  for (const auto& e : edges) {
    fmt::print(out, "{},{},{},{},{}\n", to_string(e.strategy), e.noise, e.i, e.j, e.mean_count);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(fmt::format("write to '{}' failed", path));
}

void write_run_directory(const std::string& dir, const ExperimentConfig& cfg,
                         const MatrixResult& result) {
  fs::create_directories(fs::path(dir) / "contacts");
  std::ostringstream runs;
  write_runs_csv(runs, result.records);
  write_file((fs::path(dir) / "runs.csv").string(), runs.str());
  write_file((fs::path(dir) / "config.txt").string(), to_config_text(cfg));
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& r = result.records[k];
    std::ostringstream contacts;
    write_pair_counts_csv(contacts, cfg.n_robots, result.pair_counts[k]);
    auto name = cell_name({r.strategy, r.noise, r.replicate}) + ".csv";
    write_file((fs::path(dir) / "contacts" / name).string(), contacts.str());
  }
}

std::vector<RunRecord> read_runs(const std::string& dir) {
  return parse_runs_csv(read_file((fs::path(dir) / "runs.csv").string()));
}

std::vector<std::vector<double>> read_pair_counts(const std::string& dir,
                                                  std::span<const RunRecord> records,
                                                  std::size_t& robots) {
  std::vector<std::vector<double>> out;
  robots = 0;
  for (const auto& r : records) {
    auto path = fs::path(dir) / "contacts" / (cell_name({r.strategy, r.noise, r.replicate}) + ".csv");
    auto text = read_file(path.string());
    std::size_t n = 0;
    constexpr std::string_view tag = "# robots=";
    if (text.rfind(tag, 0) == 0) {
      auto end = text.find('\n');
      n = parse_field<std::size_t>(std::string_view(text).substr(tag.size(), end - tag.size()), 1,
                                   "robot count");
    }
    if (n == 0) throw Error(fmt::format("'{}' lacks a robot-count header", path.string()));
    if (robots != 0 && n != robots) throw Error("contact files disagree on robot count");
    robots = n;
    out.push_back(parse_pair_counts_csv(text, n));
  }
  return out;
}

}  // namespace patrol
