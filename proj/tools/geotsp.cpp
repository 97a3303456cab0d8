// geotsp: generate, solve, benchmark and verify Euclidean TSP instances.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "geotsp/cli.hpp"

using namespace geotsp;

namespace {

const std::vector<std::string> kModels{"base", "nocross", "geom"};
const std::vector<std::string> kStrategies{"first-fail", "max-regret"};
const std::vector<std::string> kDistances{"exact", "tsplib-round"};

DistanceMode parse_distance(const std::string& s) {
  return s == "tsplib-round" ? DistanceMode::TsplibRound : DistanceMode::ExactEuclid;
}

template <typename F>
auto parse_list(const std::string& csv, F parse) {
  std::vector<decltype(parse(std::string_view{}))> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(parse(item));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError(e.what());
    }
  }
  if (out.empty()) throw CLI::ValidationError("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint-programming solver for the Euclidean TSP with geometric propagators"};
  app.require_subcommand(1);

  std::string sol_model = "geom", sol_strategy = "first-fail", sol_distance = "exact";
  std::string stats_model = "geom", stats_strategy = "first-fail", stats_distance = "exact";
  std::string bench_distance = "exact", verify_distance = "exact";

  cli::GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random instances as TSPLIB files");
  gen_cmd->add_option("--n", gen.n, "Number of points")->required();
  gen_cmd->add_option("--kind", gen.kind, "uniform | clustered | circle")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first instance")->capture_default_str();
  gen_cmd->add_option("--clusters", gen.clusters, "Cluster count (default n/5)");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();

  cli::SolveOptions sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a result record");
  solve_cmd->add_option("instance", sol.instance, "TSPLIB file")->required();
  solve_cmd->add_option("--model", sol_model, "base | nocross | geom")
      ->check(CLI::IsMember(kModels))->capture_default_str();
  solve_cmd->add_option("--strategy", sol_strategy, "first-fail | max-regret")
      ->check(CLI::IsMember(kStrategies))->capture_default_str();
  solve_cmd->add_option("--time-limit", sol.time_limit, "Seconds")->capture_default_str();
  solve_cmd->add_option("--distance", sol_distance, "exact | tsplib-round")
      ->check(CLI::IsMember(kDistances))->capture_default_str();
  solve_cmd->add_flag("--json", sol.json, "Emit a JSON line instead of CSV");
  solve_cmd->add_flag("--naive-crossing", sol.naive_crossing, "Use the quadratic reference crossing filter");

  cli::BenchOptions bench;
  std::string bench_models = "base,nocross,geom";
  std::string bench_strategies = "first-fail";
  auto* bench_cmd = app.add_subcommand("bench", "Solve every instance in a directory under every configuration");
  bench_cmd->add_option("instance-dir", bench.instance_dir, "Directory of .tsp files")->required();
  bench_cmd->add_option("--models", bench_models, "Comma-separated models")->capture_default_str();
  bench_cmd->add_option("--strategies", bench_strategies, "Comma-separated strategies")->capture_default_str();
  bench_cmd->add_option("--time-limit", bench.time_limit, "Seconds per solve")->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "Parallel solves")->capture_default_str();
  bench_cmd->add_option("--out", bench.out_csv, "Output CSV")->capture_default_str();
  bench_cmd->add_option("--distance", bench_distance, "exact | tsplib-round")
      ->check(CLI::IsMember(kDistances))->capture_default_str();
  bench_cmd->add_flag("--json", bench.json, "Write JSON lines instead of CSV rows");

  cli::StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Export per-pair nocrossing activity");
  stats_cmd->add_option("instance", stats.instance, "TSPLIB file")->required();
  stats_cmd->add_option("--model", stats_model, "nocross | geom")
      ->check(CLI::IsMember(kModels))->capture_default_str();
  stats_cmd->add_option("--strategy", stats_strategy, "first-fail | max-regret")
      ->check(CLI::IsMember(kStrategies))->capture_default_str();
  stats_cmd->add_option("--time-limit", stats.time_limit, "Seconds")->capture_default_str();
  stats_cmd->add_option("--out", stats.out_csv, "Output CSV")->capture_default_str();
  stats_cmd->add_option("--distance", stats_distance, "exact | tsplib-round")
      ->check(CLI::IsMember(kDistances))->capture_default_str();

  cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the solver against exact oracles");
  verify_cmd->add_option("instance", verify.instance, "TSPLIB file")->required();
  verify_cmd->add_option("--distance", verify_distance, "exact | tsplib-round")
      ->check(CLI::IsMember(kDistances))->capture_default_str();
  verify_cmd->add_option("--time-limit", verify.time_limit, "Seconds per solve")->capture_default_str();

  try {
    app.parse(argc, argv);
    bench.models = parse_list(bench_models, parse_model);
    bench.strategies = parse_list(bench_strategies, parse_var_heuristic);
    bench.distance = parse_distance(bench_distance);
    sol.model = parse_model(sol_model);
    sol.strategy = parse_var_heuristic(sol_strategy);
    sol.distance = parse_distance(sol_distance);
    stats.model = parse_model(stats_model);
    stats.strategy = parse_var_heuristic(stats_strategy);
    stats.distance = parse_distance(stats_distance);
    verify.distance = parse_distance(verify_distance);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitError;
  }

  if (*gen_cmd) return cli::cmd_gen(gen, std::cout, std::cerr);
  if (*solve_cmd) return cli::cmd_solve(sol, std::cout, std::cerr);
  if (*bench_cmd) return cli::cmd_bench(bench, std::cout, std::cerr);
  if (*stats_cmd) return cli::cmd_stats(stats, std::cout, std::cerr);
  return cli::cmd_verify(verify, std::cout, std::cerr);
}
