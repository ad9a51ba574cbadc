#include "parkplan/geometry.hpp"

#include <algorithm>
#include <limits>

namespace parkplan {

double normalize_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  if (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

double angle_diff(double a, double b) { return normalize_angle(a - b); }

Vec2 rotate(const Vec2& v, double psi) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double polygon_signed_area(const Polygon& poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    twice += p.cross(q);
  }
  return 0.5 * twice;
}

bool polygon_is_ccw(const Polygon& poly) { return polygon_signed_area(poly) > 0.0; }

bool polygon_is_convex_ccw(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = poly[(i + 1) % n] - poly[i];
    const Vec2 e2 = poly[(i + 2) % n] - poly[(i + 1) % n];
    if (e1.cross(e2) <= 1e-12) return false;
  }
  return true;
}

namespace {

// Interval of the polygon projected onto axis.
void project(const Polygon& poly, const Vec2& axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Vec2& p : poly) {
    const double d = p.dot(axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

// Smallest projection overlap across all edge normals of both polygons.
// Negative means a separating axis exists with that gap.
double sat_min_overlap(const Polygon& a, const Polygon& b) {
  double min_overlap = std::numeric_limits<double>::infinity();
  for (const Polygon* poly : {&a, &b}) {
    const std::size_t n = poly->size();
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 e = (*poly)[(i + 1) % n] - (*poly)[i];
      const double len = e.norm();
      if (len < 1e-15) continue;
      const Vec2 axis{-e.y / len, e.x / len};
      double lo_a, hi_a, lo_b, hi_b;
      project(a, axis, lo_a, hi_a);
      project(b, axis, lo_b, hi_b);
      min_overlap = std::min(min_overlap, std::min(hi_a - lo_b, hi_b - lo_a));
    }
  }
  return min_overlap;
}

}  // namespace

bool convex_polygons_intersect(const Polygon& a, const Polygon& b) {
  if (a.empty() || b.empty()) return false;
  return sat_min_overlap(a, b) > 1e-9;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 < 1e-30) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

double convex_polygon_distance(const Polygon& a, const Polygon& b) {
  return closest_points(a, b).distance;
}

namespace {

Vec2 project_onto_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 < 1e-30) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

}  // namespace

ClosestPair closest_points(const Polygon& a, const Polygon& b) {
  ClosestPair best;
  if (convex_polygons_intersect(a, b)) return best;
  best.distance = std::numeric_limits<double>::infinity();
  const std::size_t na = a.size(), nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const Vec2 q = project_onto_segment(a[i], b[j], b[(j + 1) % nb]);
      const double d1 = (a[i] - q).norm();
      if (d1 < best.distance) best = {a[i], q, d1};
      const Vec2 p = project_onto_segment(b[j], a[i], a[(i + 1) % na]);
      const double d2 = (b[j] - p).norm();
      if (d2 < best.distance) best = {p, b[j], d2};
    }
  }
  return best;
}

bool point_in_convex_polygon(const Vec2& p, const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = poly[(i + 1) % n] - poly[i];
    if (e.cross(p - poly[i]) < -1e-9) return false;
  }
  return true;
}

}  // namespace parkplan
