#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geotsp/engine.hpp"
#include "geotsp/geometry.hpp"

namespace geotsp {

// ---------------------------------------------------------------------------
// Shared state

/// Convex-hull vertices in clockwise order, with O(1) lookups.  Static for a
/// solve.
class HullOrder {
 public:
  HullOrder() = default;
  explicit HullOrder(std::span<const Point> points);

  const std::vector<int>& hull() const { return hull_; }
  int size() const { return static_cast<int>(hull_.size()); }
  bool on_hull(int v) const { return position_[v] >= 0; }
  /// Index of v in hull(), or -1.
  int position(int v) const { return position_[v]; }
  /// The hull vertex following h clockwise.  Requires on_hull(h).
  int succ(int h) const { return hull_[(position_[h] + 1) % hull_.size()]; }

 private:
  std::vector<int> hull_;
  std::vector<int> position_;
};

/// Chains of fixed successor edges, kept in trailed cells of a VarStore.
///
/// Fixed edges are merged lazily through sync(); any propagator reacting to a
/// fixed variable calls sync() first, so the structure is the same whichever
/// propagator observes the event first.  Each path also records its last hull
/// vertex (scanning from its end backwards) for the clockwise path rule.
class PathInfo {
 public:
  struct Path {
    int start = -1;
    int end = -1;
    int length = 0;     // vertices
    int last_hull = -1;  // -1 when the path contains no hull vertex
    bool closed = false;  // a Hamiltonian cycle has been completed
  };

  /// Allocates cells in `store`; must be built at decision level 0.
  PathInfo(VarStore& store, const HullOrder* hull = nullptr);

  /// Merges the edge i -> Next_i.  Requires D(Next_i) to be a singleton.
  /// Failure if it closes a cycle shorter than n or hits a vertex that
  /// already has a predecessor.
  PropStatus sync(VarStore& store, int i) const;

  /// The path containing v, following merged edges.
  Path path_of(const VarStore& store, int v) const;

  bool synced(const VarStore& store, int i) const { return store.cell(next_ + i) >= 0; }

 private:
  int n_ = 0;
  // Cell ranges, each of width n.
  int next_ = 0;       // merged successor or -1
  int pred_ = 0;       // merged predecessor or -1
  int start_of_ = 0;   // valid at path ends
  int end_of_ = 0;     // valid at path starts
  int length_ = 0;     // valid at path starts
  int last_hull_ = 0;  // valid at path starts
};

// ---------------------------------------------------------------------------
// alldifferent (forward checking)

/// Removes the value of fixed variable i from every other domain.
PropStatus alldifferent_on_fixed(VarStore& store, int i);

/// Applies alldifferent_on_fixed to every fixed variable until nothing changes.
PropStatus alldifferent_propagate(VarStore& store);

// ---------------------------------------------------------------------------
// circuit (path merging)

/// Merges i's edge (when fixed) and prunes the path containing i: its start
/// is removed from the domain of its end, or the closing edge is forced once
/// the path spans every vertex.
PropStatus circuit_on_fixed(VarStore& store, const PathInfo& paths, int i);

/// Full pass over all fixed variables, to fixpoint.
PropStatus circuit_propagate(VarStore& store, const PathInfo& paths);

// ---------------------------------------------------------------------------
// nocrossing

/// Two values of D(Next_i) lying strictly on opposite sides of the line
/// through P_i and P_j; while both remain, no value of D(Next_j) can cross
/// every segment out of P_i.
struct NocrossWatch {
  int left = -1;
  int right = -1;
};

struct NocrossOutcome {
  PropStatus status = PropStatus::Quiescent;
  int removed = 0;
  int angle_evals = 0;
  bool suspended = false;  // stopped at the half-plane gate
};

/// Removes from D(Next_j) every t whose segment P_j P_t crosses every segment
/// P_i P_q, q in D(Next_i).  Linear in |D(Next_i)| + |D(Next_j)| angle
/// evaluations; removal sets equal naive_crossing_filter's.
NocrossOutcome nocross_propagate(VarStore& store, std::span<const Point> points, int i, int j,
                                 NocrossWatch& watch);

/// { t in D(Next_j) | for all q in D(Next_i): segments_cross(P_j, P_t, P_i, P_q) }.
/// `checks`, when given, accumulates the number of segment tests.
std::vector<int> naive_crossing_filter(const VarStore& store, std::span<const Point> points, int i, int j,
                                       std::uint64_t* checks = nullptr);

// ---------------------------------------------------------------------------
// clockwise

/// Every hull vertex may only be followed, among hull vertices, by its
/// clockwise successor.
PropStatus clockwise_hull_pair_pruning(VarStore& store, const HullOrder& hull);

/// D(Next_h) = {p} for hull vertex h: no vertex strictly left of h -> p may
/// precede h.
PropStatus clockwise_ground_pruning(VarStore& store, std::span<const Point> points, const HullOrder& hull,
                                    int h, int p);

/// For the path containing i (merging i's edge if fixed): if its last hull
/// vertex is h, the path's end may reach no hull vertex except succ(h).
PropStatus clockwise_path_on_fixed(VarStore& store, const HullOrder& hull, const PathInfo& paths, int i);

/// Full pass of the path rule over every current path.
PropStatus clockwise_path_pruning(VarStore& store, const HullOrder& hull, const PathInfo& paths);

// ---------------------------------------------------------------------------
// Propagator wrappers for Space

struct PairStats {
  int i = 0;
  int j = 0;
  std::uint64_t deletions = 0;
  std::uint64_t failures = 0;
  std::uint64_t activations = 0;
  std::uint64_t idle_activations = 0;  // activations that removed nothing
  std::uint64_t angle_evals = 0;
};

/// Posts one alldifferent propagator per variable.
void post_alldifferent(Space& space);

/// Posts one circuit propagator per variable over `paths`.
void post_circuit(Space& space, const PathInfo& paths);

/// Posts the nocrossing constraint on every unordered pair: two directional
/// propagators per pair sharing one PairStats entry.  `stats` must outlive
/// the space and is resized to n(n-1)/2 in (i<j) lexicographic order.
void post_nocrossing(Space& space, std::span<const Point> points, std::vector<PairStats>& stats,
                     bool naive = false);

/// Posts the three hull rules: the root pair pruning, the ground rule on each
/// hull vertex and the path rule on each variable.
void post_clockwise(Space& space, std::span<const Point> points, const HullOrder& hull, const PathInfo& paths);

}  // namespace geotsp
