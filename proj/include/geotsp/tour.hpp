#pragma once

#include <vector>

#include "geotsp/instance.hpp"

namespace geotsp {

/// A Hamiltonian cycle in successor form.
struct Tour {
  std::vector<int> next;
  double length = 0.0;

  /// Vertex sequence starting at 0.
  std::vector<int> order() const;

  static Tour from_order(const Instance& inst, const std::vector<int>& order);
  static Tour from_successors(const Instance& inst, std::vector<int> next);
};

/// Sum of distance(i, next[i]).
double tour_length(const Instance& inst, const std::vector<int>& next);

/// True iff `next` is a single n-cycle over the instance's vertices.
bool is_hamiltonian_cycle(const std::vector<int>& next);

}  // namespace geotsp
