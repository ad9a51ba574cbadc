#pragma once

#include <cmath>
#include <vector>

namespace parkplan {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
};

using Polygon = std::vector<Vec2>;

/// Wrap an angle into (-pi, pi].
double normalize_angle(double a);

/// Shortest signed angular difference a - b, wrapped into (-pi, pi].
double angle_diff(double a, double b);

/// Rotate v by angle psi.
Vec2 rotate(const Vec2& v, double psi);

/// Signed area (positive for counter-clockwise vertex order).
double polygon_signed_area(const Polygon& poly);

bool polygon_is_ccw(const Polygon& poly);

/// Strictly convex CCW check; collinear triples are rejected.
bool polygon_is_convex_ccw(const Polygon& poly);

/// True iff two convex polygons overlap with positive area (touching
/// boundaries do not count as an intersection). Separating-axis test.
bool convex_polygons_intersect(const Polygon& a, const Polygon& b);

/// Euclidean distance between two convex polygons; 0 if they intersect
/// or touch.
double convex_polygon_distance(const Polygon& a, const Polygon& b);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

struct ClosestPair {
  Vec2 on_a;
  Vec2 on_b;
  double distance = 0.0;
};

/// Closest points between two disjoint convex polygons (boundary to
/// boundary). distance is 0 when the polygons intersect.
ClosestPair closest_points(const Polygon& a, const Polygon& b);

/// True iff p lies inside or on the boundary of a convex CCW polygon.
bool point_in_convex_polygon(const Vec2& p, const Polygon& poly);

}  // namespace parkplan
