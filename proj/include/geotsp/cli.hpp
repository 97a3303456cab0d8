#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geotsp/instance.hpp"
#include "geotsp/solver.hpp"

namespace geotsp::cli {

/// Process exit codes; stable for scripting.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,     // usage, I/O or parse error
  kExitTimeout = 2,   // solve hit its time limit
  kExitMismatch = 3,  // verify found a disagreement
};

/// One solve, as emitted by `solve` and `bench`.
struct BenchRecord {
  std::string instance;
  int n = 0;
  std::string kind;  // uniform | clustered | circle | tsplib
  std::string model;
  std::string strategy;
  std::string status;  // optimal | timeout | error
  std::optional<double> length;
  std::uint64_t nodes = 0;
  std::uint64_t failures = 0;
  double elapsed = 0.0;
  std::optional<std::uint64_t> seed;
};

/// Fixed CSV header matching to_csv's column order.
std::string csv_header();
std::string to_csv(const BenchRecord& r);
std::string to_json_line(const BenchRecord& r);

/// Kind and seed recovered from generated names ({kind}_{n}_{seed}).
std::string kind_of(const std::string& name);
std::optional<std::uint64_t> seed_of(const std::string& name);

BenchRecord make_record(const Instance& inst, Model model, VarHeuristic strategy, const SolveResult& result);

struct GenOptions {
  int n = 20;
  std::string kind = "uniform";  // uniform | clustered | circle
  int count = 1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int clusters = 0;  // 0: max(1, n / 5)
};
int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

struct SolveOptions {
  std::string instance;
  Model model = Model::Geom;
  VarHeuristic strategy = VarHeuristic::FirstFail;
  double time_limit = 60.0;
  DistanceMode distance = DistanceMode::ExactEuclid;
  bool json = false;
  bool naive_crossing = false;
};
int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string instance_dir;
  std::vector<Model> models{Model::Base, Model::Nocross, Model::Geom};
  std::vector<VarHeuristic> strategies{VarHeuristic::FirstFail};
  double time_limit = 60.0;
  int jobs = 1;
  std::string out_csv = "bench.csv";
  DistanceMode distance = DistanceMode::ExactEuclid;
  bool json = false;
};

/// Cumulative solve-time curve of one configuration: the k-th entry is the
/// time of the k-th fastest optimal solve.
struct CactusSeries {
  std::string model;
  std::string strategy;
  std::vector<double> times;
};

/// Runs the matrix and returns records sorted by (instance, model, strategy).
std::vector<BenchRecord> run_bench(const BenchOptions& opt, std::ostream& err);
std::vector<CactusSeries> cactus(const std::vector<BenchRecord>& records);
/// Writes out_csv and its cactus companion (<stem>_cactus.csv).
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

struct StatsOptions {
  std::string instance;
  Model model = Model::Geom;
  VarHeuristic strategy = VarHeuristic::FirstFail;
  double time_limit = 60.0;
  std::string out_csv = "pairs.csv";
  DistanceMode distance = DistanceMode::ExactEuclid;
};

std::string pair_stats_header();
std::string to_csv(const PairStats& p);
int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string instance;
  DistanceMode distance = DistanceMode::ExactEuclid;
  double time_limit = 60.0;
};
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace geotsp::cli
