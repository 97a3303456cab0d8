#include "geotsp/tour.hpp"

#include <stdexcept>

namespace geotsp {

std::vector<int> Tour::order() const {
  std::vector<int> out;
  out.reserve(next.size());
  int v = 0;
  for (std::size_t k = 0; k < next.size(); ++k) {
    out.push_back(v);
    v = next[v];
  }
  return out;
}

Tour Tour::from_order(const Instance& inst, const std::vector<int>& order) {
  std::vector<int> next(order.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) next[order[k]] = order[(k + 1) % order.size()];
  return from_successors(inst, std::move(next));
}

Tour Tour::from_successors(const Instance& inst, std::vector<int> next) {
  if (static_cast<int>(next.size()) != inst.size() || !is_hamiltonian_cycle(next)) {
    throw std::invalid_argument("not a Hamiltonian cycle");
  }
  const double len = tour_length(inst, next);
  return Tour{std::move(next), len};
}

double tour_length(const Instance& inst, const std::vector<int>& next) {
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(next.size()); ++i) sum += inst.distance(i, next[i]);
  return sum;
}

bool is_hamiltonian_cycle(const std::vector<int>& next) {
  const int n = static_cast<int>(next.size());
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  int v = 0;
  for (int k = 0; k < n; ++k) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
    v = next[v];
  }
  return v == 0;
}

}  // namespace geotsp
