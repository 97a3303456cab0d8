#include <memory>

#include "geotsp/constraints.hpp"

namespace geotsp {

HullOrder::HullOrder(std::span<const Point> points)
    : hull_(convex_hull(points)), position_(points.size(), -1) {
  for (int k = 0; k < static_cast<int>(hull_.size()); ++k) position_[hull_[k]] = k;
}

PathInfo::PathInfo(VarStore& store, const HullOrder* hull) : n_(store.size()) {
  if (store.level() != 0) throw std::logic_error("PathInfo must be built at the root");
  auto block = [&](auto init) {
    const int first = store.new_cell(init(0));
    for (int v = 1; v < n_; ++v) store.new_cell(init(v));
    return first;
  };
  next_ = block([](int) { return -1; });
  pred_ = block([](int) { return -1; });
  start_of_ = block([](int v) { return v; });
  end_of_ = block([](int v) { return v; });
  length_ = block([](int) { return 1; });
  last_hull_ = block([&](int v) { return hull != nullptr && hull->on_hull(v) ? v : -1; });
}

PropStatus PathInfo::sync(VarStore& store, int i) const {
  if (store.cell(next_ + i) >= 0) return PropStatus::Quiescent;
  const Domain& d = store.domain(i);
  if (!d.fixed()) throw std::logic_error("PathInfo::sync on an unfixed variable");
  const int j = d.first();
  if (store.cell(pred_ + j) >= 0) return PropStatus::Failure;

  const int s = store.cell(start_of_ + i);
  const int e = store.cell(end_of_ + j);
  store.set_cell(next_ + i, j);
  store.set_cell(pred_ + j, i);
  if (s == j) {
    // Closing the cycle is only legal once it spans every vertex.
    return store.cell(length_ + s) == n_ ? PropStatus::Quiescent : PropStatus::Failure;
  }
  store.set_cell(start_of_ + e, s);
  store.set_cell(end_of_ + s, e);
  store.set_cell(length_ + s, store.cell(length_ + s) + store.cell(length_ + j));
  const int tail_hull = store.cell(last_hull_ + j);
  if (tail_hull >= 0) store.set_cell(last_hull_ + s, tail_hull);
  return PropStatus::Quiescent;
}

PathInfo::Path PathInfo::path_of(const VarStore& store, int v) const {
  int end = v;
  for (int steps = 0; steps < n_; ++steps) {
    const int nx = store.cell(next_ + end);
    if (nx < 0) {
      const int start = store.cell(start_of_ + end);
      return Path{start, end, store.cell(length_ + start), store.cell(last_hull_ + start), false};
    }
    end = nx;
  }
  return Path{v, v, n_, -1, true};
}

PropStatus alldifferent_on_fixed(VarStore& store, int i) {
  const Domain& d = store.domain(i);
  if (!d.fixed()) return PropStatus::Quiescent;
  const int v = d.first();
  for (int k = 0; k < store.size(); ++k) {
    if (k != i && store.remove_value(k, v) == RemoveResult::Failure) return PropStatus::Failure;
  }
  return PropStatus::Quiescent;
}

PropStatus alldifferent_propagate(VarStore& store) {
  for (bool changed = true; changed;) {
    const std::size_t before = store.trail_size();
    for (int i = 0; i < store.size(); ++i) {
      if (alldifferent_on_fixed(store, i) == PropStatus::Failure) return PropStatus::Failure;
    }
    changed = store.trail_size() != before;
  }
  return PropStatus::Quiescent;
}

PropStatus circuit_on_fixed(VarStore& store, const PathInfo& paths, int i) {
  if (store.domain(i).fixed() && paths.sync(store, i) == PropStatus::Failure) return PropStatus::Failure;
  const PathInfo::Path p = paths.path_of(store, i);
  if (p.closed) return PropStatus::Quiescent;
  if (p.length < store.size()) {
    return store.remove_value(p.end, p.start) == RemoveResult::Failure ? PropStatus::Failure
                                                                       : PropStatus::Quiescent;
  }
  if (!store.domain(p.end).contains(p.start)) return PropStatus::Failure;
  return store.assign(p.end, p.start);
}

PropStatus circuit_propagate(VarStore& store, const PathInfo& paths) {
  for (bool changed = true; changed;) {
    const std::size_t before = store.trail_size();
    for (int i = 0; i < store.size(); ++i) {
      if (store.domain(i).fixed() && circuit_on_fixed(store, paths, i) == PropStatus::Failure) {
        return PropStatus::Failure;
      }
    }
    changed = store.trail_size() != before;
  }
  return PropStatus::Quiescent;
}

namespace {

class AllDifferentVar final : public Propagator {
 public:
  explicit AllDifferentVar(int var) : Propagator(PropKind::AllDifferent), var_(var) {}
  PropStatus propagate(Space& space) override { return alldifferent_on_fixed(space.store(), var_); }

 private:
  int var_;
};

class CircuitVar final : public Propagator {
 public:
  CircuitVar(const PathInfo& paths, int var) : Propagator(PropKind::Circuit), paths_(paths), var_(var) {}
  PropStatus propagate(Space& space) override { return circuit_on_fixed(space.store(), paths_, var_); }

 private:
  const PathInfo& paths_;
  int var_;
};

}  // namespace

void post_alldifferent(Space& space) {
  for (int i = 0; i < space.size(); ++i) {
    Propagator* p = space.post(std::make_unique<AllDifferentVar>(i));
    space.subscribe(p, i, Event::Fixed);
  }
}

void post_circuit(Space& space, const PathInfo& paths) {
  for (int i = 0; i < space.size(); ++i) {
    Propagator* p = space.post(std::make_unique<CircuitVar>(paths, i));
    space.subscribe(p, i, Event::Fixed);
  }
}

}  // namespace geotsp
