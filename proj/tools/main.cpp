#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mecsim/config.hpp"
#include "mecsim/engine.hpp"
#include "mecsim/hfl.hpp"
#include "mecsim/kernels.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/trace_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mecsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<int> slots;
  std::string out_dir = "out";
};

struct ReportOptions {
  std::string trace_path;
  int steps = 5;
  std::optional<std::string> out_path;
};

struct CompareOptions {
  std::string config_path;
  std::string policies_csv;
  std::string out_dir = "out";
};

struct VoteOptions {
  std::string counts_csv;
  std::optional<std::string> config_path;
};

SimConfig load_with_overrides(const RunOptions& opt) {
  SimConfig cfg = load_config_file(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.policy) cfg.policy = policy_from_string(*opt.policy);
  if (opt.slots) {
    if (*opt.slots < 1) {
      throw ConfigError(ConfigError::Kind::OutOfRange, "slots",
                        "--slots must be >= 1");
    }
    cfg.n_slots = *opt.slots;
  }
  return cfg;
}

int cmd_run(const RunOptions& opt) {
  const SimConfig cfg = load_with_overrides(opt);
  const auto result = engine::run(cfg);

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    throw io::IoError("cannot create output directory '" + opt.out_dir +
                      "': " + ec.message());
  }
  const fs::path dir(opt.out_dir);
  io::write_trace_csv(result.trace, dir / "trace.csv");
  io::write_summary_json(result.summary, dir / "summary.json");
  io::write_distance_table_csv(result.trace, 0, dir / "distance_table.csv");
  io::write_config_echo(cfg, dir / "config_echo.json");

  std::cout << "policy=" << result.summary.policy << " seed=" << cfg.seed
            << " kernels=" << kernels::backend_name(kernels::active_backend()) << "\n"
            << "wrote " << (dir / "trace.csv").string() << " (" << result.trace.size()
            << " records), summary.json, distance_table.csv, config_echo.json\n";
  return kExitOk;
}

int cmd_distance_table(const ReportOptions& opt) {
  const Trace trace = io::read_trace_csv(opt.trace_path);
  const std::string table = io::distance_table_csv(trace, opt.steps);
  if (opt.out_path) {
    io::atomic_write(*opt.out_path, table);
  } else {
    std::cout << table;
  }
  return kExitOk;
}

int cmd_plot_script(const ReportOptions& opt) {
  const Trace trace = io::read_trace_csv(opt.trace_path);
  int n_devices = 0;
  for (const auto& r : trace) n_devices = std::max(n_devices, r.device + 1);
  const std::string script = io::gnuplot_script(opt.trace_path, n_devices);
  if (opt.out_path) {
    io::atomic_write(*opt.out_path, script);
  } else {
    std::cout << script;
  }
  return kExitOk;
}

std::vector<Policy> parse_policy_list(const std::string& csv) {
  std::vector<Policy> policies;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Policy p = policy_from_string(item);
    if (std::find(policies.begin(), policies.end(), p) != policies.end()) {
      throw ConfigError(ConfigError::Kind::BadValue, "policies",
                        "policy '" + item + "' listed twice in --policies");
    }
    policies.push_back(p);
  }
  if (policies.empty()) {
    throw ConfigError(ConfigError::Kind::BadValue, "policies", "--policies is empty");
  }
  return policies;
}

int cmd_compare(const CompareOptions& opt) {
  const SimConfig cfg = load_config_file(opt.config_path);
  const auto policies = parse_policy_list(opt.policies_csv);
  const auto results = engine::compare_policies(cfg, policies);

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    throw io::IoError("cannot create output directory '" + opt.out_dir +
                      "': " + ec.message());
  }
  std::cout << "policy            energy_j      miss_rate  final_backlog_bits\n";
  for (const auto& [policy, summary] : results) {
    const std::string name = to_string(policy);
    io::write_summary_json(summary,
                           fs::path(opt.out_dir) / ("summary_" + name + ".json"));
    std::printf("%-16s %12.6g %10.4f %19lld\n", name.c_str(), summary.total_energy_j,
                summary.deadline_miss_rate,
                static_cast<long long>(summary.final_backlog_bits));
  }
  return kExitOk;
}

// The three voters of the version-selection scenario: A adopts version 2
// after five data points, B always backs version 3, C prefers version 5
// after two. B's default weight comes from the config when one is given.
int cmd_demo_vote(const VoteOptions& opt) {
  std::map<std::string, std::int64_t> counts{{"A", 5}, {"B", 3}, {"C", 2}};
  if (opt.config_path) {
    counts["B"] = load_config_file(*opt.config_path).hfl.vote_count_b;
  }
  std::stringstream ss(opt.counts_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    std::int64_t value = -1;
    if (eq != std::string::npos) {
      try {
        value = std::stoll(item.substr(eq + 1));
      } catch (const std::exception&) {
        value = -1;
      }
    }
    const std::string label = eq == std::string::npos ? item : item.substr(0, eq);
    if (!counts.count(label) || value < 0) {
      std::cerr << "error: --counts expects entries like A=5,B=3,C=2 (got '" << item
                << "')\n";
      return kExitUsage;
    }
    counts[label] = value;
  }

  const std::vector<hfl::VersionChoice> choices{
      {"A", 2, counts["A"]},
      {"B", 3, counts["B"]},
      {"C", 5, counts["C"]},
  };
  try {
    const int winner = hfl::vote_protocol_version(choices);
    std::map<int, std::int64_t> totals;
    for (const auto& c : choices) {
      std::cout << "device " << c.device << ": version " << c.version << ", weight "
                << c.data_count << "\n";
      totals[c.version] += c.data_count;
    }
    for (const auto& [version, total] : totals) {
      std::cout << "version " << version << ": total weight " << total << "\n";
    }
    std::cout << "winner: version " << winner << "\n";
    return kExitOk;
  } catch (const hfl::HflError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// One aggregation round on synthetic quadratic objectives. Each client pulls
// toward its own target, so the global model lands at the data-weighted mean
// of targets as local_steps and eta increase.
int cmd_hfl_round(const std::string& config_path) {
  const SimConfig cfg = load_config_file(config_path);
  auto stream = rng::make_stream(cfg.seed, rng::StreamId::HflData);

  std::vector<hfl::Cluster> clusters(cfg.hfl.n_clusters);
  nlohmann::ordered_json cluster_info = nlohmann::ordered_json::array();
  for (auto& cluster : clusters) {
    std::int64_t total = 0;
    for (int k = 0; k < cfg.hfl.clients_per_cluster; ++k) {
      hfl::ModelVector target(cfg.hfl.dim);
      for (auto& x : target) x = stream.uniform(-1.0, 1.0);
      const std::int64_t count =
          stream.uniform_int(cfg.hfl.data_count_min, cfg.hfl.data_count_max);
      total += count;
      hfl::Client client;
      client.model = hfl::ModelVector(cfg.hfl.dim, 0.0);
      client.data_count = count;
      client.grad = [target](const hfl::ModelVector& w) {
        hfl::ModelVector g(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) g[i] = w[i] - target[i];
        return g;
      };
      cluster.push_back(std::move(client));
    }
    cluster_info.push_back({{"clients", cfg.hfl.clients_per_cluster},
                            {"data_count", total}});
  }

  const auto global =
      hfl::hierarchical_round(clusters, cfg.hfl.eta, cfg.hfl.local_steps);

  nlohmann::ordered_json out;
  out["eta"] = cfg.hfl.eta;
  out["local_steps"] = cfg.hfl.local_steps;
  out["clusters"] = cluster_info;
  out["global_model"] = global;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time simulator of an edge-computing cell: offloading "
               "policies, three-tier placement and federated aggregation"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Run one simulation and write its outputs");
  run_cmd->add_option("--config", run_opt.config_path, "JSON config file")->required();
  run_cmd->add_option("--seed", run_opt.seed, "Override the config seed");
  run_cmd->add_option("--policy", run_opt.policy, "Override the config policy")
      ->check(CLI::IsMember(
          {"threshold", "daee", "tiered", "always_local", "always_offload"}));
  run_cmd->add_option("--slots", run_opt.slots, "Override the slot count");
  run_cmd->add_option("--out", run_opt.out_dir, "Output directory (default: out)");

  auto* report_cmd = app.add_subcommand("report", "Derive reports from a trace");
  report_cmd->require_subcommand(1);
  ReportOptions table_opt;
  auto* table_cmd = report_cmd->add_subcommand(
      "distance-table", "Time-step x device distance table from a trace");
  table_cmd->add_option("--trace", table_opt.trace_path, "trace.csv path")->required();
  table_cmd->add_option("--steps", table_opt.steps, "Rows to emit (default 5)");
  table_cmd->add_option("--out", table_opt.out_path, "Write to file instead of stdout");
  ReportOptions plot_opt;
  auto* plot_cmd = report_cmd->add_subcommand(
      "plot-script", "gnuplot script for the per-device distance curves");
  plot_cmd->add_option("--trace", plot_opt.trace_path, "trace.csv path")->required();
  plot_cmd->add_option("--out", plot_opt.out_path, "Write to file instead of stdout");

  CompareOptions cmp_opt;
  auto* cmp_cmd =
      app.add_subcommand("compare", "Run several policies on identical sample paths");
  cmp_cmd->add_option("--config", cmp_opt.config_path, "JSON config file")->required();
  cmp_cmd->add_option("--policies", cmp_opt.policies_csv, "Comma-separated policy list")
      ->required();
  cmp_cmd->add_option("--out", cmp_opt.out_dir, "Output directory (default: out)");

  auto* hfl_cmd = app.add_subcommand("hfl", "Federated aggregation demos");
  hfl_cmd->require_subcommand(1);
  VoteOptions vote_opt;
  auto* vote_cmd = hfl_cmd->add_subcommand(
      "demo-vote", "Data-weighted vote over protocol versions 2/3/5");
  vote_cmd->add_option("--counts", vote_opt.counts_csv,
                       "Per-device data counts, e.g. A=5,B=3,C=2");
  vote_cmd->add_option("--config", vote_opt.config_path,
                       "Take device B's default count from this config");
  std::string round_config;
  auto* round_cmd =
      hfl_cmd->add_subcommand("round", "One hierarchical round on synthetic data");
  round_cmd->add_option("--config", round_config, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opt);
    if (table_cmd->parsed()) return cmd_distance_table(table_opt);
    if (plot_cmd->parsed()) return cmd_plot_script(plot_opt);
    if (cmp_cmd->parsed()) return cmd_compare(cmp_opt);
    if (vote_cmd->parsed()) return cmd_demo_vote(vote_opt);
    if (round_cmd->parsed()) return cmd_hfl_round(round_config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
