#include <limits>
#include <memory>

#include "geotsp/constraints.hpp"

namespace geotsp {

namespace {

// Slack on the angle pre-filter; the exact segment tests decide.
constexpr double kAngleSlack = 1e-9;

// Maps angles measured on the left of line(P_i, P_j) onto the right-hand
// configuration, where every candidate angle lies in (0, pi).
double mirror(double a) { return a == 0.0 ? 0.0 : kTwoPi - a; }

PropStatus remove_all(VarStore& store, int var, const std::vector<int>& values, int& removed) {
  for (int v : values) {
    switch (store.remove_value(var, v)) {
      case RemoveResult::Removed:
        ++removed;
        break;
      case RemoveResult::Failure:
        return PropStatus::Failure;
      case RemoveResult::Absent:
        break;
    }
  }
  return PropStatus::Quiescent;
}

}  // namespace

std::vector<int> naive_crossing_filter(const VarStore& store, std::span<const Point> points, int i, int j,
                                       std::uint64_t* checks) {
  const Point& pi = points[i];
  const Point& pj = points[j];
  const Domain& di = store.domain(i);
  std::vector<int> out;
  store.domain(j).for_each([&](int t) {
    bool all = true;
    di.for_each([&](int q) {
      if (!all) return;
      if (checks != nullptr) ++*checks;
      all = segments_cross(pj, points[t], pi, points[q]);
    });
    if (all) out.push_back(t);
  });
  return out;
}

NocrossOutcome nocross_propagate(VarStore& store, std::span<const Point> points, int i, int j,
                                 NocrossWatch& watch) {
  NocrossOutcome out;
  const Domain& di = store.domain(i);
  const Domain& dj = store.domain(j);
  const Point& pi = points[i];
  const Point& pj = points[j];

  if (watch.left >= 0 && watch.right >= 0 && di.contains(watch.left) && di.contains(watch.right)) {
    out.suspended = true;
    return out;
  }

  // Half-plane gate: look for a value strictly on each side of line(P_i, P_j).
  if (watch.left >= 0 && !di.contains(watch.left)) watch.left = -1;
  if (watch.right >= 0 && !di.contains(watch.right)) watch.right = -1;
  bool collinear = false;
  di.for_each([&](int q) {
    switch (orient(pi, pj, points[q])) {
      case Orientation::Counterclockwise:
        if (watch.left < 0) watch.left = q;
        break;
      case Orientation::Clockwise:
        if (watch.right < 0) watch.right = q;
        break;
      case Orientation::Collinear:
        collinear = true;
        break;
    }
  });
  if (watch.left >= 0 && watch.right >= 0) {
    out.suspended = true;
    return out;
  }

  const bool strict = watch.left >= 0 || watch.right >= 0;
  std::vector<int> doomed;

  if (strict && collinear) {
    // A segment along line(P_i, P_j) can only overlap the collinear
    // candidate, and it touches every other segment from P_i at P_i alone.
    return out;
  }

  if (!strict) {
    // Every candidate lies on line(P_i, P_j) (or D(Next_i) is empty): only
    // collinear overlaps can cross.  Rare; decided exactly.
    dj.for_each([&](int t) {
      bool all = true;
      di.for_each([&](int q) {
        if (all) all = segments_cross(pj, points[t], pi, points[q]);
      });
      if (all) doomed.push_back(t);
    });
    out.status = remove_all(store, j, doomed, out.removed);
    return out;
  }

  // All candidates strictly on one side.  Normalised so that side is the
  // right of P_i -> P_j, with
  //   alpha_k = angle at P_j from P_i to P_k,
  //   beta_k  = angle at P_i from P_k to P_j,
  // P_j P_t crosses P_i P_q iff alpha_t < alpha_q and beta_t > beta_q, so it
  // crosses all of them iff alpha_t < min alpha_q and beta_t > max beta_q,
  // i.e. iff it crosses the two extremal segments.
  const bool left = watch.left >= 0;
  auto alpha = [&](int k) {
    ++out.angle_evals;
    const double a = ccw_angle(pi, pj, points[k]);
    return left ? mirror(a) : a;
  };
  auto beta = [&](int k) {
    ++out.angle_evals;
    const double b = ccw_angle(points[k], pi, pj);
    return left ? mirror(b) : b;
  };

  double alpha_min = std::numeric_limits<double>::infinity();
  double beta_max = -std::numeric_limits<double>::infinity();
  int q_alpha = -1;
  int q_beta = -1;
  di.for_each([&](int q) {
    const double a = alpha(q);
    const double b = beta(q);
    if (a < alpha_min) {
      alpha_min = a;
      q_alpha = q;
    }
    if (b > beta_max) {
      beta_max = b;
      q_beta = q;
    }
  });

  const Point& pa = points[q_alpha];
  const Point& pb = points[q_beta];
  dj.for_each([&](int t) {
    if (alpha(t) > alpha_min + kAngleSlack) return;
    if (beta(t) < beta_max - kAngleSlack) return;
    if (segments_cross(pj, points[t], pi, pa) && segments_cross(pj, points[t], pi, pb)) doomed.push_back(t);
  });
  out.status = remove_all(store, j, doomed, out.removed);
  return out;
}

namespace {

class NocrossHalf final : public Propagator {
 public:
  NocrossHalf(std::span<const Point> points, int i, int j, PairStats& stats, bool naive)
      : Propagator(PropKind::Nocross), points_(points), i_(i), j_(j), stats_(stats), naive_(naive) {}

  PropStatus propagate(Space& space) override {
    ++stats_.activations;
    int removed = 0;
    PropStatus st;
    if (naive_) {
      st = remove_all(space.store(), j_, naive_crossing_filter(space.store(), points_, i_, j_), removed);
    } else {
      const NocrossOutcome out = nocross_propagate(space.store(), points_, i_, j_, watch_);
      stats_.angle_evals += out.angle_evals;
      removed = out.removed;
      st = out.status;
    }
    stats_.deletions += removed;
    if (st == PropStatus::Failure) {
      ++stats_.failures;
    } else if (removed == 0) {
      ++stats_.idle_activations;
    }
    return st;
  }

 private:
  std::span<const Point> points_;
  int i_;
  int j_;
  PairStats& stats_;
  bool naive_;
  NocrossWatch watch_;
};

}  // namespace

void post_nocrossing(Space& space, std::span<const Point> points, std::vector<PairStats>& stats, bool naive) {
  const int n = space.size();
  stats.assign(static_cast<std::size_t>(n) * (n - 1) / 2, PairStats{});
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      stats[k].i = i;
      stats[k].j = j;
      Propagator* forward = space.post(std::make_unique<NocrossHalf>(points, i, j, stats[k], naive));
      space.subscribe(forward, i, Event::Removal);
      Propagator* backward = space.post(std::make_unique<NocrossHalf>(points, j, i, stats[k], naive));
      space.subscribe(backward, j, Event::Removal);
    }
  }
}

}  // namespace geotsp
