#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace geotsp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Orientation { Clockwise, Collinear, Counterclockwise };

/// Cross products with magnitude at or below this are treated as collinear.
inline constexpr double kGeometryTolerance = 1e-9;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Raised by convex_hull when every input point lies on one line.
class AllCollinear : public std::invalid_argument {
 public:
  AllCollinear() : std::invalid_argument("all points are collinear") {}
};

/// Sign of (q - p) x (r - p).  The three points are ordered canonically
/// before the cross product is evaluated, so the result is exactly
/// antisymmetric under any permutation of the arguments.
Orientation orient(const Point& p, const Point& q, const Point& r);

/// True iff p lies strictly to the left of the directed line a -> b.
bool is_left_of(const Point& p, const Point& a, const Point& b);

/// True iff the closed segments ab and cd meet at a point interior to both,
/// or overlap collinearly over a stretch of positive length.  Contact at an
/// endpoint alone is not a crossing.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d);

/// Counterclockwise angle at `vertex`, from ray vertex->from to ray vertex->to,
/// in [0, 2*pi).
double ccw_angle(const Point& from, const Point& vertex, const Point& to);

/// Indices of all points on the hull boundary (collinear boundary points
/// included), clockwise with y pointing up, starting at the lexicographically
/// smallest point.  Throws AllCollinear for degenerate inputs.
std::vector<int> convex_hull(std::span<const Point> points);

/// Point-in-polygon test for a convex polygon given in clockwise order.
/// Points on the boundary count as inside.
bool inside_convex_polygon(const Point& p, std::span<const Point> polygon_cw);

}  // namespace geotsp
