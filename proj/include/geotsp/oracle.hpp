#pragma once

#include <stdexcept>

#include "geotsp/instance.hpp"
#include "geotsp/tour.hpp"

namespace geotsp {

class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  double optimal_length = 0.0;
  Tour tour;
};

inline constexpr int kHeldKarpMaxN = 20;
inline constexpr int kEnumerateMaxN = 10;

/// Exact optimum by dynamic programming over subsets anchored at vertex 0.
/// Throws TooLarge for n > 20.
OracleResult held_karp_dp(const Instance& inst);

/// Exact optimum by enumerating every undirected tour.  Throws TooLarge for
/// n > 10.
OracleResult enumerate_optimal(const Instance& inst);

/// Unordered pairs of tour edges whose segments cross.
int count_crossings(const Instance& inst, const Tour& tour);

/// True iff the tour meets the hull vertices in hull order, in either
/// direction.
bool verify_hull_order(const Instance& inst, const Tour& tour);

}  // namespace geotsp
