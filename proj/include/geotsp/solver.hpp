#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geotsp/constraints.hpp"
#include "geotsp/engine.hpp"
#include "geotsp/instance.hpp"
#include "geotsp/tour.hpp"

namespace geotsp {

enum class Model {
  Base,     // alldifferent + circuit
  Nocross,  // base + nocrossing on every pair
  Geom,     // nocross + clockwise
};

struct ModelConfig {
  Model model = Model::Geom;
  /// Use the literal O(d^2) crossing filter inside the nocrossing propagators.
  bool naive_crossing = false;

  bool has_nocrossing() const { return model != Model::Base; }
  bool has_clockwise() const { return model == Model::Geom; }
};

enum class VarHeuristic { FirstFail, MaxRegret };
enum class ValueHeuristic { Nearest };

struct StrategyConfig {
  VarHeuristic var = VarHeuristic::FirstFail;
  ValueHeuristic value = ValueHeuristic::Nearest;
};

std::string_view to_string(Model m);
std::string_view to_string(VarHeuristic v);
/// Accepts "base", "nocross", "geom"; throws std::invalid_argument otherwise.
Model parse_model(std::string_view s);
/// Accepts "first-fail" / "first_fail" and "max-regret" / "max_regret".
VarHeuristic parse_var_heuristic(std::string_view s);

struct SearchStats {
  std::uint64_t nodes = 0;  // branch nodes entered, root excluded
  std::uint64_t failures = 0;
  std::uint64_t solutions = 0;
  double elapsed = 0.0;  // seconds
  PropagationCounters propagation;
  /// One entry per unordered vertex pair when the model has nocrossing.
  std::vector<PairStats> pairs;

  std::uint64_t nocross_deletions() const { return propagation.deletions_of(PropKind::Nocross); }
};

enum class SolveStatus { Optimal, TimedOut };

struct SolveResult {
  SolveStatus status = SolveStatus::TimedOut;
  /// The optimum, or the best tour known at timeout.
  std::optional<Tour> tour;
  SearchStats stats;
};

/// Depth-first branch and bound with binary branching (Next_i = v, then
/// Next_i != v).  The incumbent starts from warm_start(); the objective is
/// bounded by the assigned edge lengths plus, for every unfixed vertex, its
/// cheapest remaining successor.
SolveResult solve(const Instance& inst, const ModelConfig& model, const StrategyConfig& strategy,
                  double time_limit_seconds);

/// Unfixed variable with the smallest domain; ties to the smallest index.
std::optional<int> select_var_first_fail(const VarStore& store);

/// Unfixed variable maximising (second cheapest - cheapest) successor
/// distance; ties to the smallest index.
std::optional<int> select_var_max_regret(const VarStore& store, const DistanceTable& dist);

/// Closest value in D(Next_i); ties to the smallest index.
int select_value_nearest(const VarStore& store, const DistanceTable& dist, int i);

/// Sum of fixed edge lengths plus, for every unfixed i, min over D(Next_i)
/// of distance(i, v).
double objective_lower_bound(const VarStore& store, const DistanceTable& dist);

/// Nearest neighbour from vertex 0, then 2-opt to a local optimum.
Tour warm_start(const Instance& inst);

}  // namespace geotsp
