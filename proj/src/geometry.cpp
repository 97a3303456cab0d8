#include "geotsp/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace geotsp {

namespace {

bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

double cross(const Point& p, const Point& q, const Point& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

// Projection parameter of p on the line through a with direction b - a.
double along(const Point& a, const Point& b, const Point& p) {
  return (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
}

}  // namespace

Orientation orient(const Point& p, const Point& q, const Point& r) {
  std::array<const Point*, 3> pts{&p, &q, &r};
  bool odd = false;
  // Three-element sorting network; each swap flips the permutation parity.
  auto order = [&](int a, int b) {
    if (lex_less(*pts[b], *pts[a])) {
      std::swap(pts[a], pts[b]);
      odd = !odd;
    }
  };
  order(0, 1);
  order(1, 2);
  order(0, 1);
  double c = cross(*pts[0], *pts[1], *pts[2]);
  if (std::abs(c) <= kGeometryTolerance) return Orientation::Collinear;
  if (odd) c = -c;
  return c > 0 ? Orientation::Counterclockwise : Orientation::Clockwise;
}

bool is_left_of(const Point& p, const Point& a, const Point& b) {
  return orient(a, b, p) == Orientation::Counterclockwise;
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Orientation o1 = orient(a, b, c);
  const Orientation o2 = orient(a, b, d);
  const Orientation o3 = orient(c, d, a);
  const Orientation o4 = orient(c, d, b);
  constexpr auto kCol = Orientation::Collinear;

  if (o1 != kCol && o2 != kCol && o3 != kCol && o4 != kCol) return o1 != o2 && o3 != o4;
  if (o1 != kCol || o2 != kCol || o3 != kCol || o4 != kCol) return false;

  // All four collinear: the interiors overlap iff the projected intervals
  // share a stretch of positive length.  Project on the longer segment so the
  // result does not depend on argument order.
  const Point* p0 = &a;
  const Point* p1 = &b;
  const Point* q0 = &c;
  const Point* q1 = &d;
  const double len_ab = along(a, b, b);
  const double len_cd = along(c, d, d);
  if (len_cd > len_ab || (len_cd == len_ab && lex_less(std::min(c, d, lex_less), std::min(a, b, lex_less)))) {
    std::swap(p0, q0);
    std::swap(p1, q1);
  }
  // Canonical direction along the reference segment.
  if (lex_less(*p1, *p0)) std::swap(p0, p1);
  const double lo1 = 0.0;
  const double hi1 = along(*p0, *p1, *p1);
  const double s = along(*p0, *p1, *q0);
  const double t = along(*p0, *p1, *q1);
  const double lo2 = std::min(s, t);
  const double hi2 = std::max(s, t);
  return std::max(lo1, lo2) < std::min(hi1, hi2);
}

double ccw_angle(const Point& from, const Point& vertex, const Point& to) {
  const double a1 = std::atan2(from.y - vertex.y, from.x - vertex.x);
  const double a2 = std::atan2(to.y - vertex.y, to.x - vertex.x);
  double r = a2 - a1;
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

std::vector<int> convex_hull(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw AllCollinear();

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return lex_less(points[a], points[b]); });

  const Point& lo = points[idx.front()];
  const Point& hi = points[idx.back()];
  const bool degenerate = std::all_of(idx.begin(), idx.end(), [&](int k) {
    return orient(lo, hi, points[k]) == Orientation::Collinear;
  });
  if (degenerate) throw AllCollinear();

  // Monotone chain; only strict right turns are popped so collinear boundary
  // points survive.  Produces counterclockwise order.
  std::vector<int> chain;
  chain.reserve(2 * n);
  auto extend = [&](int k, std::size_t floor) {
    while (chain.size() >= floor + 2 &&
           orient(points[chain[chain.size() - 2]], points[chain.back()], points[k]) ==
               Orientation::Clockwise) {
      chain.pop_back();
    }
    chain.push_back(k);
  };
  for (int k : idx) extend(k, 0);
  const std::size_t lower = chain.size() - 1;
  for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) extend(*it, lower);
  chain.pop_back();

  std::vector<int> cw;
  cw.reserve(chain.size());
  cw.push_back(chain.front());
  for (auto it = chain.rbegin(); it + 1 != chain.rend(); ++it) cw.push_back(*it);
  return cw;
}

bool inside_convex_polygon(const Point& p, std::span<const Point> polygon_cw) {
  const std::size_t k = polygon_cw.size();
  for (std::size_t a = 0; a < k; ++a) {
    const Point& from = polygon_cw[a];
    const Point& to = polygon_cw[(a + 1) % k];
    if (is_left_of(p, from, to)) return false;
  }
  return true;
}

}  // namespace geotsp
