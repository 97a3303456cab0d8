// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geotsp/cli.hpp"
#include "geotsp/constraints.hpp"
#include "geotsp/oracle.hpp"
#include "geotsp/solver.hpp"

using namespace geotsp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

template <typename T>
T median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const std::vector<Model> kModels{Model::Base, Model::Nocross, Model::Geom};
const std::vector<VarHeuristic> kStrategies{VarHeuristic::FirstFail, VarHeuristic::MaxRegret};

// ---------------------------------------------------------------------------

Outcome oracle_agreement() {
  double worst = 0;
  int checked = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 5 + k % 5;
    const Instance base = k % 2 ? gen_uniform(n, 100 + k) : gen_clustered(n, 2, 100 + k);
    for (DistanceMode mode : {DistanceMode::ExactEuclid, DistanceMode::TsplibRound}) {
      const Instance inst = base.with_mode(mode);
      worst = std::max(worst, std::abs(held_karp_dp(inst).optimal_length - enumerate_optimal(inst).optimal_length));
      ++checked;
    }
  }
  return {worst <= 1e-9, fmt("%d instance/mode pairs, max |dp - enum| = %.3g", checked, worst)};
}

struct ExactnessData {
  int solves = 0;
  int not_optimal = 0;
  int wrong_length = 0;
  double worst = 0;
  int crossing_tours = 0;
  int hull_violations = 0;
  bool done = false;
};

ExactnessData& exactness_data() {
  static ExactnessData d;
  if (d.done) return d;
  for (int k = 0; k < 100; ++k) {
    const Instance inst = k < 50 ? gen_uniform(12, 200 + k) : gen_clustered(12, 3, 200 + k);
    const double opt = held_karp_dp(inst).optimal_length;
    for (Model m : kModels) {
      for (VarHeuristic s : kStrategies) {
        const SolveResult r = solve(inst, {m}, {s}, 600);
        ++d.solves;
        if (r.status != SolveStatus::Optimal || !r.tour) {
          ++d.not_optimal;
          continue;
        }
        const double diff = std::abs(r.tour->length - opt);
        d.worst = std::max(d.worst, diff);
        if (diff > 1e-6) ++d.wrong_length;
        if (count_crossings(inst, *r.tour) != 0) ++d.crossing_tours;
        if (!verify_hull_order(inst, *r.tour)) ++d.hull_violations;
      }
    }
  }
  d.done = true;
  return d;
}

Outcome solver_exactness() {
  const ExactnessData& d = exactness_data();
  return {d.not_optimal == 0 && d.wrong_length == 0,
          fmt("%d solves (100 instances x 3 models x 2 strategies), %d not optimal, %d off, max |diff| = %.3g",
              d.solves, d.not_optimal, d.wrong_length, d.worst)};
}

Outcome no_crossings() {
  const ExactnessData& d = exactness_data();
  return {d.crossing_tours == 0 && d.not_optimal == 0,
          fmt("%d optimal tours, %d with crossings", d.solves - d.not_optimal, d.crossing_tours)};
}

Outcome hull_order() {
  const ExactnessData& d = exactness_data();
  return {d.hull_violations == 0 && d.not_optimal == 0,
          fmt("%d optimal tours, %d out of hull order", d.solves - d.not_optimal, d.hull_violations)};
}

// ---------------------------------------------------------------------------

std::vector<Point> random_points(std::mt19937_64& rng, int n, bool grid) {
  std::vector<Point> pts;
  std::uniform_real_distribution<double> u(0, 1000);
  while (static_cast<int>(pts.size()) < n) {
    const Point p = grid ? Point{double(rng() % 6), double(rng() % 6)} : Point{u(rng), u(rng)};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return pts;
}

void random_shrink(std::mt19937_64& rng, VarStore& s, int i) {
  const double keep = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
  std::uniform_real_distribution<double> u(0, 1);
  for (int v : s.domain(i).values()) {
    if (s.domain(i).size() > 1 && u(rng) > keep) s.remove_value(i, v);
  }
}

Outcome propagator_equivalence() {
  std::mt19937_64 rng(5);
  int states = 0, mismatches = 0, pruning = 0;
  while (states < 12000) {
    const int n = 6 + static_cast<int>(rng() % 5);
    const std::vector<Point> pts = random_points(rng, n, rng() % 4 == 0);
    VarStore s(n);
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % (n - 1));
    if (j >= i) ++j;
    NocrossWatch watch;
    for (int step = 0; step < 5; ++step) {
      random_shrink(rng, s, i);
      if (rng() % 2) random_shrink(rng, s, j);
      const Domain before = s.domain(j);
      const std::vector<int> expected = naive_crossing_filter(s, pts, i, j);
      const NocrossOutcome out = nocross_propagate(s, pts, i, j, watch);
      std::vector<int> got;
      before.for_each([&](int v) {
        if (!s.domain(j).contains(v)) got.push_back(v);
      });
      ++states;
      if (got != expected) ++mismatches;
      if (!expected.empty()) ++pruning;
      if (out.status == PropStatus::Failure) break;
    }
  }
  return {mismatches == 0, fmt("%d states, %d with removals, %d mismatches", states, pruning, mismatches)};
}

Outcome path_rule_implication() {
  int missing = 0, removals = 0;
  for (int k = 0; k < 100; ++k) {
    const Instance inst = gen_uniform(6 + k % 25, 300 + k);
    const HullOrder hull(inst.points());
    VarStore a(inst.size());
    const PathInfo paths(a, &hull);
    VarStore b(inst.size());
    const auto root = a.domains();
    clockwise_path_pruning(a, hull, paths);
    clockwise_hull_pair_pruning(b, hull);
    for (int v = 0; v < inst.size(); ++v) {
      root[v].for_each([&](int x) {
        if (!b.domain(v).contains(x)) {
          ++removals;
          if (a.domain(v).contains(x)) ++missing;
        }
      });
    }
  }
  return {missing == 0, fmt("100 root states, %d hull-pair removals, %d not implied by the path rule", removals, missing)};
}

Outcome pruning_trend() {
  std::vector<double> failures[3];
  int solved[3] = {};
  for (int k = 0; k < 30; ++k) {
    const Instance inst = gen_uniform(18, 400 + k);
    for (int m = 0; m < 3; ++m) {
      const SolveResult r = solve(inst, {kModels[m]}, {VarHeuristic::FirstFail}, 60);
      failures[m].push_back(static_cast<double>(r.stats.failures));
      solved[m] += r.status == SolveStatus::Optimal;
    }
  }
  const double base = median(failures[0]), nocross = median(failures[1]), geom = median(failures[2]);
  return {geom <= nocross && nocross <= base && solved[2] >= solved[0],
          fmt("median failures geom %.0f <= nocross %.0f <= base %.0f; solved geom %d, nocross %d, base %d (of 30)",
              geom, nocross, base, solved[2], solved[1], solved[0])};
}

Outcome forced_hull() {
  int bad = 0;
  std::uint64_t total_failures = 0;
  for (int k = 0; k < 20; ++k) {
    const Instance inst = gen_circle(15, 500 + k);
    const SolveResult r = solve(inst, {Model::Geom}, {VarHeuristic::FirstFail}, 60);
    total_failures += r.stats.failures;
    if (r.status != SolveStatus::Optimal || r.stats.failures != 0) ++bad;
  }
  return {bad == 0, fmt("20 circle instances, %d not solved failure-free, total failures %llu", bad,
                        static_cast<unsigned long long>(total_failures))};
}

Outcome stats_surface() {
  const fs::path dir = fs::temp_directory_path() / "geotsp_acceptance_stats";
  fs::create_directories(dir);
  std::ostringstream out, err;
  cli::cmd_gen({20, "uniform", 1, 600, dir.string()}, out, err);
  cli::StatsOptions opt;
  opt.instance = (dir / "uniform_20_600.tsp").string();
  opt.out_csv = (dir / "pairs.csv").string();
  std::ostringstream summary;
  const int rc = cli::cmd_stats(opt, summary, err);

  std::ifstream in(opt.out_csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  unsigned long long sum = 0;
  std::set<std::pair<int, int>> pairs;
  while (std::getline(in, line)) {
    int i, j;
    unsigned long long del;
    if (std::sscanf(line.c_str(), "%d,%d,%llu", &i, &j, &del) == 3) {
      ++rows;
      sum += del;
      pairs.emplace(i, j);
    }
  }
  unsigned long long counter = 0;
  const std::string s = summary.str();
  const auto pos = s.find("total_deletions=");
  if (pos != std::string::npos) counter = std::stoull(s.substr(pos + 16));
  fs::remove_all(dir);
  return {rc == 0 && rows == 190 && pairs.size() == 190 && sum == counter && counter > 0,
          fmt("%d rows (%zu distinct pairs), deletion column sum %llu, engine counter %llu", rows, pairs.size(), sum,
              counter)};
}

// States where D(Next_i) sits on one side of line(P_i, P_j), so the propagator
// does real work: q in a steep fan above P_i, t mostly behind it.
Outcome complexity_guard() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> lx, fast_y, naive_y;
  for (int d = 4; d <= 512; d *= 2) {
    double fast = 0, naive = 0;
    constexpr int kReps = 20;
    for (int rep = 0; rep < kReps; ++rep) {
      std::vector<Point> pts{{0, 0}, {1, 0}};
      for (int k = 0; k < d; ++k) pts.push_back({0.4 + 0.2 * u(rng), 1 + u(rng)});
      for (int k = 0; k < d; ++k) {
        pts.push_back(k % 8 ? Point{-2 + u(rng), 0.5 + 0.4 * u(rng)} : Point{4 * u(rng) - 2, 4 * u(rng) - 2});
      }
      const int n = static_cast<int>(pts.size());
      VarStore s(n);
      for (int v = 0; v < n; ++v) {
        if (v >= 2 + d || v < 2) s.remove_value(0, v);
        if (v < 2 + d) s.remove_value(1, v);
      }
      std::uint64_t checks = 0;
      naive_crossing_filter(s, pts, 0, 1, &checks);
      NocrossWatch w;
      const NocrossOutcome out = nocross_propagate(s, pts, 0, 1, w);
      fast += out.angle_evals;
      naive += static_cast<double>(checks);
    }
    lx.push_back(std::log(2.0 * d));
    fast_y.push_back(std::log(fast / kReps));
    naive_y.push_back(std::log(naive / kReps));
  }
  const double fast_exp = slope(lx, fast_y);
  const double naive_exp = slope(lx, naive_y);
  return {fast_exp <= 1.2 && naive_exp >= 1.8,
          fmt("domain sizes 8..1024: angle evaluations grow with exponent %.3f, naive segment tests with %.3f",
              fast_exp, naive_exp)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle correctness", oracle_agreement},
      {"solver exactness", solver_exactness},
      {"no crossings in optimal tours", no_crossings},
      {"optimal tours follow hull order", hull_order},
      {"nocross equals naive filter", propagator_equivalence},
      {"path rule implies hull pair rule", path_rule_implication},
      {"pruning benefit trend", pruning_trend},
      {"forced hull on circles", forced_hull},
      {"stats surface", stats_surface},
      {"complexity guard", complexity_guard},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << criteria[k].first << "): " << o.detail
              << fmt("  [%.1fs]", secs) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
