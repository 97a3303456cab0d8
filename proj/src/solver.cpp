#include "geotsp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace geotsp {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::Base:
      return "base";
    case Model::Nocross:
      return "nocross";
    case Model::Geom:
      return "geom";
  }
  return "?";
}

std::string_view to_string(VarHeuristic v) {
  return v == VarHeuristic::FirstFail ? "first-fail" : "max-regret";
}

Model parse_model(std::string_view s) {
  if (s == "base") return Model::Base;
  if (s == "nocross") return Model::Nocross;
  if (s == "geom") return Model::Geom;
  throw std::invalid_argument("unknown model '" + std::string(s) + "'");
}

VarHeuristic parse_var_heuristic(std::string_view s) {
  if (s == "first-fail" || s == "first_fail") return VarHeuristic::FirstFail;
  if (s == "max-regret" || s == "max_regret") return VarHeuristic::MaxRegret;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

std::optional<int> select_var_first_fail(const VarStore& store) {
  std::optional<int> best;
  int best_size = std::numeric_limits<int>::max();
  for (int i = 0; i < store.size(); ++i) {
    const int sz = store.domain(i).size();
    if (sz > 1 && sz < best_size) {
      best = i;
      best_size = sz;
    }
  }
  return best;
}

std::optional<int> select_var_max_regret(const VarStore& store, const DistanceTable& dist) {
  std::optional<int> best;
  double best_regret = -1.0;
  for (int i = 0; i < store.size(); ++i) {
    const Domain& d = store.domain(i);
    if (d.size() < 2) continue;
    double first = std::numeric_limits<double>::infinity();
    double second = first;
    d.for_each([&](int v) {
      const double c = dist(i, v);
      if (c < first) {
        second = first;
        first = c;
      } else if (c < second) {
        second = c;
      }
    });
    const double regret = second - first;
    if (regret > best_regret) {
      best = i;
      best_regret = regret;
    }
  }
  return best;
}

int select_value_nearest(const VarStore& store, const DistanceTable& dist, int i) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  store.domain(i).for_each([&](int v) {
    if (dist(i, v) < best_d) {
      best = v;
      best_d = dist(i, v);
    }
  });
  return best;
}

double objective_lower_bound(const VarStore& store, const DistanceTable& dist) {
  double lb = 0.0;
  for (int i = 0; i < store.size(); ++i) {
    double m = std::numeric_limits<double>::infinity();
    store.domain(i).for_each([&](int v) { m = std::min(m, dist(i, v)); });
    lb += m;
  }
  return lb;
}

namespace {

using Clock = std::chrono::steady_clock;

/// Tour length <= limit, enforced through objective_lower_bound and per-value
/// reduced bounds.
class ObjectiveBound final : public Propagator {
 public:
  explicit ObjectiveBound(const DistanceTable& dist) : Propagator(PropKind::Objective), dist_(dist) {}

  void set_limit(double limit) { limit_ = limit; }
  double limit() const { return limit_; }

  PropStatus propagate(Space& space) override {
    VarStore& store = space.store();
    const int n = store.size();
    mins_.assign(n, 0.0);
    double lb = 0.0;
    for (int i = 0; i < n; ++i) {
      double m = std::numeric_limits<double>::infinity();
      store.domain(i).for_each([&](int v) { m = std::min(m, dist_(i, v)); });
      mins_[i] = m;
      lb += m;
    }
    if (lb > limit_) return PropStatus::Failure;
    for (int i = 0; i < n; ++i) {
      const Domain& d = store.domain(i);
      if (d.fixed()) continue;
      const double slack = limit_ - (lb - mins_[i]);
      doomed_.clear();
      d.for_each([&](int v) {
        if (dist_(i, v) > slack) doomed_.push_back(v);
      });
      for (int v : doomed_) {
        if (store.remove_value(i, v) == RemoveResult::Failure) return PropStatus::Failure;
      }
    }
    return PropStatus::Quiescent;
  }

 private:
  const DistanceTable& dist_;
  double limit_ = std::numeric_limits<double>::infinity();
  std::vector<double> mins_;
  std::vector<int> doomed_;
};

struct Problem {
  Problem(const Instance& inst, const ModelConfig& model)
      : dist(inst),
        space(inst.size()),
        hull(inst.points()),
        paths(space.store(), model.has_clockwise() ? &hull : nullptr) {
    post_alldifferent(space);
    post_circuit(space, paths);
    if (model.has_nocrossing()) post_nocrossing(space, inst.points(), pairs, model.naive_crossing);
    if (model.has_clockwise()) post_clockwise(space, inst.points(), hull, paths);
    auto obj = std::make_unique<ObjectiveBound>(dist);
    objective = obj.get();
    space.post(std::move(obj));
    space.subscribe_all(objective, Event::Removal);
  }

  DistanceTable dist;
  Space space;
  HullOrder hull;
  PathInfo paths;
  std::vector<PairStats> pairs;
  ObjectiveBound* objective = nullptr;
};

class Search {
 public:
  Search(const Instance& inst, Problem& problem, const StrategyConfig& strategy, Clock::time_point deadline,
         Tour incumbent)
      : inst_(inst), p_(problem), strategy_(strategy), deadline_(deadline), best_(std::move(incumbent)) {
    const bool rounded = inst.distance_mode() == DistanceMode::TsplibRound;
    // The warm-start tour itself stays admissible so search can re-find it.
    p_.objective->set_limit(rounded ? best_.length + 0.5 : best_.length * (1.0 + 1e-12) + 1e-9);
  }

  /// Returns false on timeout.
  bool run() {
    // A root failure proves the warm start optimal within the model.
    if (p_.space.propagate_fixpoint() == PropStatus::Failure) return true;
    dfs();
    return !timed_out_;
  }

  SearchStats& stats() { return stats_; }
  Tour& best() { return best_; }

 private:
  std::optional<int> select() const {
    if (strategy_.var == VarHeuristic::MaxRegret) return select_var_max_regret(p_.space.store(), p_.dist);
    return select_var_first_fail(p_.space.store());
  }

  void record_solution() {
    const VarStore& store = p_.space.store();
    std::vector<int> next(store.size());
    for (int i = 0; i < store.size(); ++i) next[i] = store.domain(i).first();
    if (!is_hamiltonian_cycle(next)) throw std::logic_error("search reached a non-tour leaf");
    const double len = tour_length(inst_, next);
    if (len > p_.objective->limit()) return;
    ++stats_.solutions;
    best_ = Tour{std::move(next), len};
    const bool rounded = inst_.distance_mode() == DistanceMode::TsplibRound;
    p_.objective->set_limit(rounded ? len - 0.5 : len - kStrengthen);
  }

  void dfs() {
    if (Clock::now() >= deadline_) {
      timed_out_ = true;
      return;
    }
    const std::optional<int> var = select();
    if (!var) {
      record_solution();
      return;
    }
    const int value = select_value_nearest(p_.space.store(), p_.dist, *var);
    for (int branch = 0; branch < 2 && !timed_out_; ++branch) {
      ++stats_.nodes;
      VarStore& store = p_.space.store();
      store.push_level();
      bool ok = branch == 0 ? p_.space.assign(*var, value) == PropStatus::Quiescent
                            : p_.space.remove_value(*var, value) != RemoveResult::Failure;
      if (ok) {
        // The bound may have tightened since this subtree's parent was propagated.
        p_.space.schedule(p_.objective);
        ok = p_.space.propagate_fixpoint() == PropStatus::Quiescent;
      } else {
        p_.space.clear_queue();
      }
      if (ok) {
        dfs();
      } else {
        ++stats_.failures;
      }
      store.pop_level();
    }
  }

  static constexpr double kStrengthen = 1e-9;

  const Instance& inst_;
  Problem& p_;
  StrategyConfig strategy_;
  Clock::time_point deadline_;
  Tour best_;
  SearchStats stats_;
  bool timed_out_ = false;
};

}  // namespace

SolveResult solve(const Instance& inst, const ModelConfig& model, const StrategyConfig& strategy,
                  double time_limit_seconds) {
  const auto start = Clock::now();
  const auto budget = std::chrono::duration<double>(std::max(0.0, time_limit_seconds));
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(budget);

  SolveResult result;
  Tour initial = warm_start(inst);
  if (time_limit_seconds <= 0.0) {
    result.status = SolveStatus::TimedOut;
    result.tour = std::move(initial);
    result.stats.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  }

  Problem problem(inst, model);
  Search search(inst, problem, strategy, deadline, std::move(initial));
  const bool finished = search.run();

  result.status = finished ? SolveStatus::Optimal : SolveStatus::TimedOut;
  result.tour = std::move(search.best());
  result.stats = std::move(search.stats());
  result.stats.propagation = problem.space.counters();
  result.stats.pairs = problem.pairs;
  result.stats.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

Tour warm_start(const Instance& inst) {
  const int n = inst.size();
  const DistanceTable dist(inst);
  std::vector<int> order{0};
  std::vector<bool> used(n, false);
  used[0] = true;
  for (int k = 1; k < n; ++k) {
    const int cur = order.back();
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!used[v] && (best < 0 || dist(cur, v) < dist(cur, best))) best = v;
    }
    used[best] = true;
    order.push_back(best);
  }

  const double eps = inst.distance_mode() == DistanceMode::TsplibRound ? 0.5 : 1e-9;
  for (bool improved = true; improved;) {
    improved = false;
    for (int a = 0; a + 1 < n; ++a) {
      for (int b = a + 2; b < n; ++b) {
        if (a == 0 && b == n - 1) continue;  // the two edges share vertex order[0]
        const int p = order[a];
        const int q = order[a + 1];
        const int r = order[b];
        const int s = order[(b + 1) % n];
        const double delta = dist(p, r) + dist(q, s) - dist(p, q) - dist(r, s);
        if (delta < -eps) {
          std::reverse(order.begin() + a + 1, order.begin() + b + 1);
          improved = true;
        }
      }
    }
  }
  return Tour::from_order(inst, order);
}

}  // namespace geotsp
