#pragma once

#include <vector>

#include "parkplan/geometry.hpp"
#include "parkplan/gridmap.hpp"
#include "parkplan/search.hpp"

namespace parkplan {

using SmoothPath = std::vector<Vec2>;

struct SplineConfig {
  int degree = 3;
  int sample_stride = 3;   // every m-th path cell becomes a control point
  int output_samples = 0;  // 0 = 10x control count
  std::vector<double> knots;  // empty = uniform clamped
};

/// Bernstein basis C(n,i) t^i (1-t)^(n-i).
double bernstein(int i, int n, double t);

/// Cox-de Boor recurrence; degree 0 is the indicator of [t_i, t_{i+1}),
/// closed on the right at the final knot. 0/0 spans evaluate to 0.
double bspline_basis(int i, int k, double t, const std::vector<double>& knots);

/// Clamped knot vector for n_control points of the given degree.
std::vector<double> uniform_clamped_knots(int n_control, int degree);

/// B-spline interpolation of the grid path (cell centers, meters).
SmoothPath smooth_path(const Path& path, const SplineConfig& cfg,
                       double resolution = 1.0);

/// smooth_path plus a traversability re-check: spans whose samples leave
/// the traversable set are replaced by the raw path cells they cover.
SmoothPath smooth_path_safe(const Path& path, const SplineConfig& cfg,
                            const OccupancyGrid& grid,
                            TraversabilityMatrix& matrix);

}  // namespace parkplan
