#include <memory>

#include "geotsp/constraints.hpp"

namespace geotsp {

PropStatus clockwise_hull_pair_pruning(VarStore& store, const HullOrder& hull) {
  for (int h : hull.hull()) {
    const int allowed = hull.succ(h);
    for (int g : hull.hull()) {
      if (g != allowed && store.remove_value(h, g) == RemoveResult::Failure) return PropStatus::Failure;
    }
  }
  return PropStatus::Quiescent;
}

PropStatus clockwise_ground_pruning(VarStore& store, std::span<const Point> points, const HullOrder& hull,
                                    int h, int p) {
  if (!hull.on_hull(h)) return PropStatus::Quiescent;
  for (int q = 0; q < store.size(); ++q) {
    if (q == h || q == p) continue;
    if (is_left_of(points[q], points[h], points[p]) && store.remove_value(q, h) == RemoveResult::Failure) {
      return PropStatus::Failure;
    }
  }
  return PropStatus::Quiescent;
}

namespace {

PropStatus prune_path_end(VarStore& store, const HullOrder& hull, const PathInfo::Path& path) {
  if (path.closed || path.last_hull < 0) return PropStatus::Quiescent;
  const int allowed = hull.succ(path.last_hull);
  for (int g : hull.hull()) {
    if (g != allowed && store.remove_value(path.end, g) == RemoveResult::Failure) return PropStatus::Failure;
  }
  return PropStatus::Quiescent;
}

}  // namespace

PropStatus clockwise_path_on_fixed(VarStore& store, const HullOrder& hull, const PathInfo& paths, int i) {
  if (store.domain(i).fixed() && paths.sync(store, i) == PropStatus::Failure) return PropStatus::Failure;
  return prune_path_end(store, hull, paths.path_of(store, i));
}

PropStatus clockwise_path_pruning(VarStore& store, const HullOrder& hull, const PathInfo& paths) {
  for (bool changed = true; changed;) {
    const std::size_t before = store.trail_size();
    for (int i = 0; i < store.size(); ++i) {
      if (store.domain(i).fixed() && paths.sync(store, i) == PropStatus::Failure) return PropStatus::Failure;
    }
    for (int v = 0; v < store.size(); ++v) {
      if (paths.synced(store, v)) continue;  // not a path end
      if (prune_path_end(store, hull, paths.path_of(store, v)) == PropStatus::Failure) return PropStatus::Failure;
    }
    changed = store.trail_size() != before;
  }
  return PropStatus::Quiescent;
}

namespace {

class HullPairRoot final : public Propagator {
 public:
  explicit HullPairRoot(const HullOrder& hull) : Propagator(PropKind::Clockwise), hull_(hull) {}
  PropStatus propagate(Space& space) override { return clockwise_hull_pair_pruning(space.store(), hull_); }

 private:
  const HullOrder& hull_;
};

class GroundRule final : public Propagator {
 public:
  GroundRule(std::span<const Point> points, const HullOrder& hull, int h)
      : Propagator(PropKind::Clockwise), points_(points), hull_(hull), h_(h) {}

  PropStatus propagate(Space& space) override {
    const Domain& d = space.domain(h_);
    if (!d.fixed()) return PropStatus::Quiescent;
    return clockwise_ground_pruning(space.store(), points_, hull_, h_, d.first());
  }

 private:
  std::span<const Point> points_;
  const HullOrder& hull_;
  int h_;
};

class PathRule final : public Propagator {
 public:
  PathRule(const HullOrder& hull, const PathInfo& paths, int var)
      : Propagator(PropKind::Clockwise), hull_(hull), paths_(paths), var_(var) {}

  PropStatus propagate(Space& space) override { return clockwise_path_on_fixed(space.store(), hull_, paths_, var_); }

 private:
  const HullOrder& hull_;
  const PathInfo& paths_;
  int var_;
};

}  // namespace

void post_clockwise(Space& space, std::span<const Point> points, const HullOrder& hull, const PathInfo& paths) {
  space.post(std::make_unique<HullPairRoot>(hull));
  for (int h : hull.hull()) {
    Propagator* p = space.post(std::make_unique<GroundRule>(points, hull, h));
    space.subscribe(p, h, Event::Fixed);
  }
  for (int i = 0; i < space.size(); ++i) {
    Propagator* p = space.post(std::make_unique<PathRule>(hull, paths, i));
    space.subscribe(p, i, Event::Fixed);
  }
}

}  // namespace geotsp
