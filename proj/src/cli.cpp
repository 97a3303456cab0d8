#include "geotsp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "geotsp/oracle.hpp"

namespace geotsp::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_seconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string status_name(SolveStatus s) { return s == SolveStatus::Optimal ? "optimal" : "timeout"; }

std::vector<std::string> split_name(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string p; std::getline(ss, p, '_');) parts.push_back(p);
  return parts;
}

bool is_generated_kind(const std::string& k) { return k == "uniform" || k == "clustered" || k == "circle"; }

bool write_file(const fs::path& path, const std::string& contents, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << contents;
  if (!f) {
    err << "error: cannot write '" << path.string() << "'\n";
    return false;
  }
  return true;
}

Instance load(const std::string& path, DistanceMode mode) { return read_tsplib_file(path).with_mode(mode); }

}  // namespace

std::string csv_header() { return "instance,n,kind,model,strategy,status,length,nodes,failures,elapsed,seed"; }

std::string to_csv(const BenchRecord& r) {
  std::ostringstream o;
  o << r.instance << ',' << r.n << ',' << r.kind << ',' << r.model << ',' << r.strategy << ',' << r.status << ','
    << (r.length ? fmt_double(*r.length) : "") << ',' << r.nodes << ',' << r.failures << ','
    << fmt_seconds(r.elapsed) << ',' << (r.seed ? std::to_string(*r.seed) : "");
  return o.str();
}

std::string to_json_line(const BenchRecord& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["n"] = r.n;
  j["kind"] = r.kind;
  j["model"] = r.model;
  j["strategy"] = r.strategy;
  j["status"] = r.status;
  j["length"] = r.length ? nlohmann::ordered_json(*r.length) : nlohmann::ordered_json(nullptr);
  j["nodes"] = r.nodes;
  j["failures"] = r.failures;
  j["elapsed"] = r.elapsed;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

std::string kind_of(const std::string& name) {
  const auto parts = split_name(name);
  if (parts.size() == 3 && is_generated_kind(parts[0])) return parts[0];
  return "tsplib";
}

std::optional<std::uint64_t> seed_of(const std::string& name) {
  const auto parts = split_name(name);
  if (parts.size() != 3 || !is_generated_kind(parts[0])) return std::nullopt;
  std::uint64_t seed = 0;
  const auto& s = parts[2];
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return seed;
}

BenchRecord make_record(const Instance& inst, Model model, VarHeuristic strategy, const SolveResult& result) {
  BenchRecord r;
  r.instance = inst.name();
  r.n = inst.size();
  r.kind = kind_of(inst.name());
  r.model = std::string(to_string(model));
  r.strategy = std::string(to_string(strategy));
  r.status = status_name(result.status);
  if (result.status == SolveStatus::Optimal && result.tour) r.length = result.tour->length;
  r.nodes = result.stats.nodes;
  r.failures = result.stats.failures;
  r.elapsed = result.stats.elapsed;
  r.seed = seed_of(inst.name());
  return r;
}

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.n < 3) {
    err << "error: --n must be at least 3\n";
    return kExitError;
  }
  if (opt.count < 1) {
    err << "error: --count must be positive\n";
    return kExitError;
  }
  if (!is_generated_kind(opt.kind)) {
    err << "error: unknown kind '" << opt.kind << "' (uniform, clustered, circle)\n";
    return kExitError;
  }
  const int clusters = opt.clusters > 0 ? opt.clusters : std::max(1, opt.n / 5);
  if (opt.kind == "clustered" && clusters > opt.n) {
    err << "error: --clusters must not exceed --n\n";
    return kExitError;
  }
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    err << "error: cannot create '" << opt.out_dir << "': " << ec.message() << '\n';
    return kExitError;
  }
  for (int k = 0; k < opt.count; ++k) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
    const Instance inst = opt.kind == "uniform"     ? gen_uniform(opt.n, seed)
                          : opt.kind == "clustered" ? gen_clustered(opt.n, clusters, seed)
                                                    : gen_circle(opt.n, seed);
    const fs::path path = fs::path(opt.out_dir) / (inst.name() + ".tsp");
    if (!write_file(path, write_tsplib(inst), err)) return kExitError;
    out << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<Instance> inst;
  try {
    inst = load(opt.instance, opt.distance);
  } catch (const std::exception& e) {
    err << "error: " << opt.instance << ": " << e.what() << '\n';
    return kExitError;
  }
  ModelConfig model{opt.model, opt.naive_crossing};
  const SolveResult result = solve(*inst, model, StrategyConfig{opt.strategy}, opt.time_limit);
  const BenchRecord r = make_record(*inst, opt.model, opt.strategy, result);
  if (opt.json) {
    out << to_json_line(r) << '\n';
  } else {
    out << csv_header() << '\n' << to_csv(r) << '\n';
  }
  return result.status == SolveStatus::Optimal ? kExitOk : kExitTimeout;
}

std::vector<BenchRecord> run_bench(const BenchOptions& opt, std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.instance_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  struct Task {
    std::size_t file;
    Model model;
    VarHeuristic strategy;
  };
  std::vector<Task> tasks;
  for (std::size_t f = 0; f < files.size(); ++f) {
    for (Model m : opt.models) {
      for (VarHeuristic s : opt.strategies) tasks.push_back({f, m, s});
    }
  }

  // Each worker owns its solve; records are written to distinct slots and
  // only read after join.
  std::vector<BenchRecord> records(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t k = cursor++; k < tasks.size(); k = cursor++) {
      const Task& t = tasks[k];
      try {
        const Instance inst = load(files[t.file].string(), opt.distance);
        const SolveResult res = solve(inst, ModelConfig{t.model}, StrategyConfig{t.strategy}, opt.time_limit);
        records[k] = make_record(inst, t.model, t.strategy, res);
      } catch (const std::exception& e) {
        BenchRecord r;
        r.instance = files[t.file].stem().string();
        r.kind = kind_of(r.instance);
        r.model = std::string(to_string(t.model));
        r.strategy = std::string(to_string(t.strategy));
        r.status = "error";
        r.seed = seed_of(r.instance);
        records[k] = r;
        errors[k] = files[t.file].string() + ": " + e.what();
      }
    }
  };
  const int jobs = std::max(1, opt.jobs);
  std::vector<std::jthread> pool;
  for (int w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& e : errors) {
    if (!e.empty()) err << "error: " << e << '\n';
  }
  return records;
}

std::vector<CactusSeries> cactus(const std::vector<BenchRecord>& records) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> by_config;
  for (const auto& r : records) {
    auto& times = by_config[{r.model, r.strategy}];
    if (r.status == "optimal") times.push_back(r.elapsed);
  }
  std::vector<CactusSeries> out;
  for (auto& [key, times] : by_config) {
    std::sort(times.begin(), times.end());
    out.push_back(CactusSeries{key.first, key.second, std::move(times)});
  }
  return out;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(opt.instance_dir)) {
    err << "error: '" << opt.instance_dir << "' is not a directory\n";
    return kExitError;
  }
  const auto records = run_bench(opt, err);

  std::ostringstream raw;
  if (opt.json) {
    for (const auto& r : records) raw << to_json_line(r) << '\n';
  } else {
    raw << csv_header() << '\n';
    for (const auto& r : records) raw << to_csv(r) << '\n';
  }
  if (!write_file(opt.out_csv, raw.str(), err)) return kExitError;

  fs::path cactus_path(opt.out_csv);
  cactus_path.replace_filename(cactus_path.stem().string() + "_cactus.csv");
  std::ostringstream cc;
  cc << "model,strategy,solved,time\n";
  for (const auto& series : cactus(records)) {
    for (std::size_t k = 0; k < series.times.size(); ++k) {
      cc << series.model << ',' << series.strategy << ',' << (k + 1) << ',' << fmt_seconds(series.times[k]) << '\n';
    }
  }
  if (!write_file(cactus_path, cc.str(), err)) return kExitError;
  out << "records=" << records.size() << " out=" << opt.out_csv << " cactus=" << cactus_path.string() << '\n';
  return kExitOk;
}

std::string pair_stats_header() { return "i,j,deletions,failures,activations,idle_activations,no_prune"; }

std::string to_csv(const PairStats& p) {
  std::ostringstream o;
  o << p.i << ',' << p.j << ',' << p.deletions << ',' << p.failures << ',' << p.activations << ','
    << p.idle_activations << ',' << (p.deletions == 0 ? 1 : 0);
  return o.str();
}

int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.model == Model::Base) {
    err << "error: stats requires a model with nocrossing (nocross or geom)\n";
    return kExitError;
  }
  std::optional<Instance> inst;
  try {
    inst = load(opt.instance, opt.distance);
  } catch (const std::exception& e) {
    err << "error: " << opt.instance << ": " << e.what() << '\n';
    return kExitError;
  }
  const SolveResult result = solve(*inst, ModelConfig{opt.model}, StrategyConfig{opt.strategy}, opt.time_limit);

  std::ostringstream csv;
  csv << pair_stats_header() << '\n';
  for (const auto& p : result.stats.pairs) csv << to_csv(p) << '\n';
  if (!write_file(opt.out_csv, csv.str(), err)) return kExitError;

  out << "pairs=" << result.stats.pairs.size() << " total_deletions=" << result.stats.nocross_deletions()
      << " status=" << status_name(result.status) << " out=" << opt.out_csv << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<Instance> inst;
  try {
    inst = load(opt.instance, opt.distance);
  } catch (const std::exception& e) {
    err << "error: " << opt.instance << ": " << e.what() << '\n';
    return kExitError;
  }
  constexpr double kTol = 1e-6;

  std::optional<OracleResult> dp;
  try {
    dp = held_karp_dp(*inst);
  } catch (const TooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  bool ok = true;
  auto check_tour = [&](const Tour& t) {
    const int crossings = count_crossings(*inst, t);
    const bool hull_ok = verify_hull_order(*inst, t);
    out << " crossings=" << crossings << " hull_order=" << (hull_ok ? "true" : "false");
    ok = ok && crossings == 0 && hull_ok;
  };

  out << "instance=" << inst->name() << " n=" << inst->size() << '\n';
  out << "held_karp length=" << fmt_double(dp->optimal_length);
  check_tour(dp->tour);
  out << '\n';
  if (inst->size() <= kEnumerateMaxN) {
    const OracleResult en = enumerate_optimal(*inst);
    const bool agree = std::abs(en.optimal_length - dp->optimal_length) <= kTol;
    ok = ok && agree;
    out << "enumerate length=" << fmt_double(en.optimal_length) << " agree=" << (agree ? "true" : "false");
    check_tour(en.tour);
    out << '\n';
  }
  for (Model m : {Model::Base, Model::Nocross, Model::Geom}) {
    for (VarHeuristic s : {VarHeuristic::FirstFail, VarHeuristic::MaxRegret}) {
      const SolveResult r = solve(*inst, ModelConfig{m}, StrategyConfig{s}, opt.time_limit);
      out << "solve model=" << to_string(m) << " strategy=" << to_string(s) << " status=" << status_name(r.status);
      if (r.status != SolveStatus::Optimal) {
        ok = false;
        out << '\n';
        continue;
      }
      const bool agree = std::abs(r.tour->length - dp->optimal_length) <= kTol;
      ok = ok && agree;
      out << " length=" << fmt_double(r.tour->length) << " agree=" << (agree ? "true" : "false");
      check_tour(*r.tour);
      out << '\n';
    }
  }
  out << "result=" << (ok ? "ok" : "mismatch") << '\n';
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace geotsp::cli
