#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "geotsp/constraints.hpp"
#include "geotsp/engine.hpp"
#include "geotsp/oracle.hpp"
#include "geotsp/solver.hpp"

using namespace geotsp;

namespace {

const Instance kSquare("square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
const Instance kCentred("centred", {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});

void shrink_to(VarStore& s, int i, int size) {
  for (int v = s.size() - 1; v >= 0 && s.domain(i).size() > size; --v) s.remove_value(i, v);
}

class Wipe final : public Propagator {
 public:
  Wipe() : Propagator(PropKind::Other) {}
  PropStatus propagate(Space& space) override {
    for (int v : space.domain(0).values()) {
      if (space.remove_value(0, v) == RemoveResult::Failure) return PropStatus::Failure;
    }
    return PropStatus::Quiescent;
  }
};

class Counting final : public Propagator {
 public:
  Counting() : Propagator(PropKind::Other) {}
  PropStatus propagate(Space&) override {
    ++runs;
    return PropStatus::Quiescent;
  }
  int runs = 0;
};

}  // namespace

TEST_CASE("Domain") {
  const Domain d(5, 2);
  CHECK(d.size() == 4);
  CHECK_FALSE(d.contains(2));
  CHECK(d.values() == std::vector<int>{0, 1, 3, 4});
  CHECK(d.first() == 0);
  const Domain big(130, 0);
  CHECK(big.size() == 129);
  CHECK(big.contains(129));
}

TEST_CASE("remove_value") {
  VarStore s(4);
  const std::size_t t0 = s.trail_size();
  CHECK(s.remove_value(0, 1) == RemoveResult::Removed);
  CHECK(s.domain(0).size() == 2);
  CHECK(s.trail_size() == t0 + 1);
  CHECK(s.remove_value(0, 1) == RemoveResult::Absent);
  CHECK(s.remove_value(0, 0) == RemoveResult::Absent);
  CHECK(s.trail_size() == t0 + 1);
  CHECK(s.remove_value(0, 2) == RemoveResult::Removed);
  CHECK(s.remove_value(0, 3) == RemoveResult::Failure);
  CHECK(s.domain(0).empty());
}

TEST_CASE("assign and backtrack") {
  VarStore s(5);
  const Domain before = s.domain(1);
  s.push_level();
  const std::size_t t0 = s.trail_size();
  CHECK(s.assign(1, 3) == PropStatus::Quiescent);
  CHECK(s.domain(1).values() == std::vector<int>{3});
  CHECK(s.trail_size() == t0 + 3);
  CHECK(s.assign(1, 3) == PropStatus::Quiescent);
  CHECK(s.trail_size() == t0 + 3);
  s.pop_level();
  CHECK(s.domain(1) == before);
  CHECK_THROWS(s.pop_level());
  CHECK_THROWS(s.assign(1, 1));
}

TEST_CASE("trail restores random histories exactly") {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 200; ++round) {
    const int n = 3 + round % 70;
    VarStore s(n);
    const int cell = s.new_cell(7);
    std::vector<std::vector<Domain>> snaps;
    std::vector<int> cells;
    for (int step = 0; step < 60; ++step) {
      const int op = static_cast<int>(rng() % 4);
      const int i = static_cast<int>(rng() % n);
      if (op == 0) {
        snaps.push_back(s.domains());
        cells.push_back(s.cell(cell));
        s.push_level();
      } else if (op == 1 && !snaps.empty()) {
        s.pop_level();
        CHECK(s.domains() == snaps.back());
        CHECK(s.cell(cell) == cells.back());
        snaps.pop_back();
        cells.pop_back();
      } else if (op == 2) {
        const int v = static_cast<int>(rng() % n);
        if (s.domain(i).size() > 1) s.remove_value(i, v);
        s.set_cell(cell, static_cast<int>(rng() % 100));
      } else if (s.domain(i).size() > 1) {
        const auto vals = s.domain(i).values();
        s.assign(i, vals[rng() % vals.size()]);
      }
    }
    while (!snaps.empty()) {
      s.pop_level();
      CHECK(s.domains() == snaps.back());
      CHECK(s.cell(cell) == cells.back());
      snaps.pop_back();
      cells.pop_back();
    }
  }
}

TEST_CASE("propagate_fixpoint") {
  SUBCASE("nothing queued") {
    Space sp(4);
    const auto doms = sp.store().domains();
    CHECK(sp.propagate_fixpoint() == PropStatus::Quiescent);
    CHECK(sp.store().domains() == doms);
  }
  SUBCASE("wipeout fails") {
    Space sp(4);
    sp.post(std::make_unique<Wipe>());
    CHECK(sp.propagate_fixpoint() == PropStatus::Failure);
    CHECK(sp.queue_empty());
    CHECK(sp.counters().failures_of(PropKind::Other) == 1);
  }
  SUBCASE("subscribers wake on the right events") {
    Space sp(5);
    auto* rem = static_cast<Counting*>(sp.post(std::make_unique<Counting>()));
    auto* fix = static_cast<Counting*>(sp.post(std::make_unique<Counting>()));
    sp.subscribe(rem, 2, Event::Removal);
    sp.subscribe(fix, 2, Event::Fixed);
    sp.propagate_fixpoint();
    CHECK(rem->runs == 1);
    CHECK(fix->runs == 1);
    sp.remove_value(2, 0);
    sp.propagate_fixpoint();
    CHECK(rem->runs == 2);
    CHECK(fix->runs == 1);
    sp.assign(2, 4);
    sp.propagate_fixpoint();
    CHECK(rem->runs == 3);
    CHECK(fix->runs == 2);
    sp.remove_value(3, 0);
    sp.propagate_fixpoint();
    CHECK(rem->runs == 3);
  }
}

TEST_CASE("fixpoint does not depend on propagator order") {
  std::mt19937_64 rng(77);
  int compared = 0;
  for (int round = 0; round < 150; ++round) {
    const int n = 6 + round % 6;
    const Instance inst = gen_uniform(n, 1000 + round);
    const HullOrder hull(inst.points());

    // random decisions, replayed on every space
    std::vector<std::pair<int, int>> decisions;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) {
      decisions.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    }

    std::vector<std::vector<Domain>> finals;
    std::vector<PropStatus> statuses;
    for (int order = 0; order < 4; ++order) {
      Space sp(n);
      PathInfo paths(sp.store(), &hull);
      std::vector<PairStats> stats;
      post_alldifferent(sp);
      post_circuit(sp, paths);
      post_nocrossing(sp, inst.points(), stats);
      post_clockwise(sp, inst.points(), hull, paths);
      if (order > 0) sp.shuffle_queue(rng());
      PropStatus st = sp.propagate_fixpoint();
      for (auto [i, v] : decisions) {
        if (st == PropStatus::Failure) break;
        if (!sp.domain(i).contains(v) || sp.domain(i).fixed()) continue;
        st = (v % 2 ? sp.assign(i, v) : (sp.remove_value(i, v) == RemoveResult::Failure ? PropStatus::Failure
                                                                                          : PropStatus::Quiescent));
        if (st == PropStatus::Failure) {
          sp.clear_queue();
          break;
        }
        st = sp.propagate_fixpoint();
      }
      statuses.push_back(st);
      finals.push_back(sp.store().domains());
    }
    for (int k = 1; k < 4; ++k) {
      CHECK(statuses[k] == statuses[0]);
      if (statuses[0] == PropStatus::Quiescent) {
        CHECK(finals[k] == finals[0]);
        ++compared;
      }
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("select_var_first_fail") {
  VarStore s(6);
  shrink_to(s, 0, 1);
  shrink_to(s, 1, 3);
  shrink_to(s, 2, 2);
  shrink_to(s, 3, 5);
  shrink_to(s, 4, 1);
  shrink_to(s, 5, 1);
  CHECK(select_var_first_fail(s) == 2);

  VarStore t(4);
  shrink_to(t, 0, 1);
  shrink_to(t, 1, 2);
  shrink_to(t, 2, 2);
  shrink_to(t, 3, 1);
  CHECK(select_var_first_fail(t) == 1);

  VarStore u(3);
  for (int i = 0; i < 3; ++i) shrink_to(u, i, 1);
  CHECK(select_var_first_fail(u) == std::nullopt);
}

TEST_CASE("select_var_max_regret") {
  // vertex 0 sees {1, 9}, vertex 3 sees {4, 5}
  const Instance line("r", {{0, 0}, {1, 0}, {9, 0}, {0, 100}, {4, 100}, {5, 100}});
  const DistanceTable d(line);
  VarStore s(6);
  s.remove_value(0, 3);
  s.remove_value(0, 4);
  s.remove_value(0, 5);
  s.remove_value(3, 0);
  s.remove_value(3, 1);
  s.remove_value(3, 2);
  for (int i : {1, 2, 4, 5}) shrink_to(s, i, 1);
  CHECK(select_var_max_regret(s, d) == 0);

  const DistanceTable sq(kSquare);
  VarStore all(4);
  CHECK(select_var_max_regret(all, sq) == 0);

  VarStore none(4);
  for (int i = 0; i < 4; ++i) shrink_to(none, i, 1);
  CHECK(select_var_max_regret(none, sq) == std::nullopt);

  // D(Next_0) = {1, 2}: regret sqrt(2) - 1, larger than every other vertex's 0
  VarStore r(4);
  r.remove_value(0, 3);
  CHECK(select_var_max_regret(r, sq) == 0);
}

TEST_CASE("select_value_nearest") {
  const DistanceTable d(kSquare);
  VarStore s(4);
  s.remove_value(0, 3);
  CHECK(select_value_nearest(s, d, 0) == 1);
  s.remove_value(0, 1);
  CHECK(select_value_nearest(s, d, 0) == 2);

  const Instance eq("eq", {{0, 0}, {5, 5}, {-1, 0}, {7, 7}, {0, 3}, {1, 0}});
  const DistanceTable e(eq);
  VarStore t(6);
  t.remove_value(0, 1);
  t.remove_value(0, 3);
  t.remove_value(0, 4);
  CHECK(select_value_nearest(t, e, 0) == 2);
}

TEST_CASE("objective_lower_bound never exceeds the optimum") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = gen_uniform(9, seed);
    const DistanceTable d(inst);
    VarStore s(inst.size());
    CHECK(objective_lower_bound(s, d) <= held_karp_dp(inst).optimal_length + 1e-9);
    const Tour t = held_karp_dp(inst).tour;
    for (int i = 0; i < 4; ++i) s.assign(i, t.next[i]);
    CHECK(objective_lower_bound(s, d) <= t.length + 1e-9);
  }
}

TEST_CASE("solve small instances") {
  for (Model m : {Model::Base, Model::Nocross, Model::Geom}) {
    for (VarHeuristic v : {VarHeuristic::FirstFail, VarHeuristic::MaxRegret}) {
      CAPTURE(to_string(m));
      CAPTURE(to_string(v));
      const SolveResult sq = solve(kSquare, {m}, {v}, 10);
      CHECK(sq.status == SolveStatus::Optimal);
      REQUIRE(sq.tour);
      CHECK(sq.tour->length == doctest::Approx(4.0));

      const SolveResult c = solve(kCentred, {m}, {v}, 10);
      CHECK(c.status == SolveStatus::Optimal);
      CHECK(c.tour->length == doctest::Approx(3 + 2 * std::sqrt(0.5)).epsilon(1e-12));
      CHECK(c.tour->length == doctest::Approx(held_karp_dp(kCentred).optimal_length).epsilon(1e-12));
    }
  }
}

TEST_CASE("solve with no time") {
  const SolveResult r = solve(gen_uniform(12, 3), {Model::Geom}, {}, 0.0);
  CHECK(r.status == SolveStatus::TimedOut);
  CHECK(r.stats.nodes == 0);
  REQUIRE(r.tour);
  CHECK(is_hamiltonian_cycle(r.tour->next));
}

TEST_CASE("search statistics are consistent") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = gen_uniform(11, seed);
    const SolveResult r = solve(inst, {Model::Geom}, {}, 30);
    CHECK(r.stats.nodes >= r.stats.failures);
    CHECK(r.stats.nodes % 2 == 0);
    std::uint64_t sum = 0;
    for (const PairStats& p : r.stats.pairs) {
      sum += p.deletions;
      CHECK(p.idle_activations <= p.activations);
    }
    CHECK(sum == r.stats.nocross_deletions());
    CHECK(r.stats.pairs.size() == 55u);
  }
}

TEST_CASE("tsplib distances are solved exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = gen_uniform(10, seed).with_mode(DistanceMode::TsplibRound);
    const SolveResult r = solve(inst, {Model::Base}, {}, 30);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.tour->length == held_karp_dp(inst).optimal_length);
  }
}

TEST_CASE("warm_start") {
  CHECK(warm_start(kSquare).length == doctest::Approx(4.0));
  std::vector<double> ratios;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = gen_uniform(12, seed);
    const Tour t = warm_start(inst);
    CHECK(is_hamiltonian_cycle(t.next));
    CHECK(t.length == doctest::Approx(tour_length(inst, t.next)));
    const double opt = held_karp_dp(inst).optimal_length;
    CHECK(t.length >= opt - 1e-9);
    ratios.push_back(t.length / opt);
  }
  std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
  CHECK(ratios[ratios.size() / 2] <= 1.25);
}

TEST_CASE("model names") {
  CHECK(parse_model("nocross") == Model::Nocross);
  CHECK(to_string(Model::Geom) == "geom");
  CHECK(parse_var_heuristic("max-regret") == VarHeuristic::MaxRegret);
  CHECK_THROWS_AS(parse_model("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_var_heuristic("x"), std::invalid_argument);
}
