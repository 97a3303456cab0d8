#include "geotsp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "geotsp/geometry.hpp"

namespace geotsp {

OracleResult held_karp_dp(const Instance& inst) {
  const int n = inst.size();
  if (n > kHeldKarpMaxN) throw TooLarge("held_karp_dp supports at most 20 vertices");
  const DistanceTable dist(inst);

  // Vertices 1..n-1 map to bits 0..m-1.  cost[S][k]: shortest path from 0
  // through exactly S, ending at vertex k+1 (bit k of S set).
  const int m = n - 1;
  const std::size_t subsets = std::size_t{1} << m;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(subsets * m, kInf);
  std::vector<std::int8_t> parent(subsets * m, -1);
  auto at = [m](std::size_t s, int k) { return s * static_cast<std::size_t>(m) + k; };

  for (int k = 0; k < m; ++k) cost[at(std::size_t{1} << k, k)] = dist(0, k + 1);
  for (std::size_t s = 1; s < subsets; ++s) {
    for (int k = 0; k < m; ++k) {
      if (!(s >> k & 1u)) continue;
      const double base = cost[at(s, k)];
      if (base == kInf) continue;
      for (int j = 0; j < m; ++j) {
        if (s >> j & 1u) continue;
        const std::size_t t = s | (std::size_t{1} << j);
        const double c = base + dist(k + 1, j + 1);
        if (c < cost[at(t, j)]) {
          cost[at(t, j)] = c;
          parent[at(t, j)] = static_cast<std::int8_t>(k);
        }
      }
    }
  }

  const std::size_t full = subsets - 1;
  double best = kInf;
  int last = -1;
  for (int k = 0; k < m; ++k) {
    const double c = cost[at(full, k)] + dist(k + 1, 0);
    if (c < best) {
      best = c;
      last = k;
    }
  }

  std::vector<int> order;
  std::size_t s = full;
  for (int k = last; k >= 0;) {
    order.push_back(k + 1);
    const int prev = parent[at(s, k)];
    s &= ~(std::size_t{1} << k);
    k = prev;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  Tour tour = Tour::from_order(inst, order);
  return OracleResult{tour.length, std::move(tour)};
}

OracleResult enumerate_optimal(const Instance& inst) {
  const int n = inst.size();
  if (n > kEnumerateMaxN) throw TooLarge("enumerate_optimal supports at most 10 vertices");
  const DistanceTable dist(inst);

  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_order;
  do {
    // Each undirected tour once: fix 0 first and orient by the end labels.
    if (rest.front() > rest.back()) continue;
    double len = dist(0, rest.front()) + dist(rest.back(), 0);
    for (int k = 0; k + 1 < n - 1; ++k) len += dist(rest[k], rest[k + 1]);
    if (len < best) {
      best = len;
      best_order = rest;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));

  best_order.insert(best_order.begin(), 0);
  Tour tour = Tour::from_order(inst, best_order);
  return OracleResult{tour.length, std::move(tour)};
}

int count_crossings(const Instance& inst, const Tour& tour) {
  const int n = inst.size();
  int count = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (segments_cross(inst.point(a), inst.point(tour.next[a]), inst.point(b), inst.point(tour.next[b]))) {
        ++count;
      }
    }
  }
  return count;
}

bool verify_hull_order(const Instance& inst, const Tour& tour) {
  const std::vector<int> hull = convex_hull(inst.points());
  std::vector<int> seen;
  for (int v : tour.order()) {
    if (std::find(hull.begin(), hull.end(), v) != hull.end()) seen.push_back(v);
  }
  // Rotate so both sequences start at hull[0].
  std::rotate(seen.begin(), std::find(seen.begin(), seen.end(), hull.front()), seen.end());
  if (seen == hull) return true;
  std::reverse(seen.begin() + 1, seen.end());
  return seen == hull;
}

}  // namespace geotsp
