#include "parkplan/smooth.hpp"

#include <algorithm>
#include <cmath>

#include "parkplan/errors.hpp"

namespace parkplan {

double bernstein(int i, int n, double t) {
  if (i < 0 || i > n) throw DomainError("bernstein: need 0 <= i <= n");
  double binom = 1.0;
  for (int j = 1; j <= i; ++j) {
    binom *= static_cast<double>(n - i + j) / j;
  }
  return binom * std::pow(t, i) * std::pow(1.0 - t, n - i);
}

double bspline_basis(int i, int k, double t, const std::vector<double>& knots) {
  if (i < 0 || k < 0 || static_cast<std::size_t>(i + k + 1) >= knots.size()) {
    throw DomainError("bspline_basis: index outside knot range");
  }
  if (k == 0) {
    if (t >= knots[i] && t < knots[i + 1]) return 1.0;
    // Close the final nonempty span so the curve reaches the last knot.
    if (t == knots.back() && knots[i] < knots[i + 1] &&
        knots[i + 1] == knots.back()) {
      return 1.0;
    }
    return 0.0;
  }
  double left = 0.0;
  const double den_l = knots[i + k] - knots[i];
  if (den_l > 0.0) {
    left = (t - knots[i]) / den_l * bspline_basis(i, k - 1, t, knots);
  }
  double right = 0.0;
  const double den_r = knots[i + k + 1] - knots[i + 1];
  if (den_r > 0.0) {
    right = (knots[i + k + 1] - t) / den_r * bspline_basis(i + 1, k - 1, t, knots);
  }
  return left + right;
}

std::vector<double> uniform_clamped_knots(int n_control, int degree) {
  const int n = n_control - 1;
  std::vector<double> knots;
  knots.reserve(n + degree + 2);
  for (int i = 0; i <= degree; ++i) knots.push_back(0.0);
  const int interior = n - degree;
  for (int i = 1; i <= interior; ++i) {
    knots.push_back(static_cast<double>(i) / (interior + 1));
  }
  for (int i = 0; i <= degree; ++i) knots.push_back(1.0);
  return knots;
}

namespace {

struct SplineEval {
  std::vector<Vec2> control;
  std::vector<double> knots;
  int degree = 1;
  std::vector<int> control_to_path;  // raw path index behind each control point

  Vec2 at(double t) const {
    Vec2 p;
    for (std::size_t i = 0; i < control.size(); ++i) {
      const double w = bspline_basis(static_cast<int>(i), degree, t, knots);
      p = p + control[i] * w;
    }
    return p;
  }
};

SplineEval build_spline(const Path& path, const SplineConfig& cfg,
                        double resolution) {
  if (path.size() < 2) throw DegenerateInput("smooth_path: need >= 2 cells");
  if (cfg.degree < 1) throw DomainError("smooth_path: degree must be >= 1");
  const int stride = std::max(1, cfg.sample_stride);

  SplineEval sp;
  for (std::size_t i = 0; i < path.size(); i += stride) {
    sp.control.push_back(cell_center(path[i], resolution));
    sp.control_to_path.push_back(static_cast<int>(i));
  }
  if (sp.control_to_path.back() != static_cast<int>(path.size()) - 1) {
    sp.control.push_back(cell_center(path.back(), resolution));
    sp.control_to_path.push_back(static_cast<int>(path.size()) - 1);
  }

  sp.degree = std::min<int>(cfg.degree, static_cast<int>(sp.control.size()) - 1);
  sp.knots = cfg.knots.empty()
                 ? uniform_clamped_knots(static_cast<int>(sp.control.size()),
                                         sp.degree)
                 : cfg.knots;
  if (sp.knots.size() != sp.control.size() + sp.degree + 1) {
    throw DomainError("smooth_path: knot count mismatch");
  }
  if (!std::is_sorted(sp.knots.begin(), sp.knots.end())) {
    throw DomainError("smooth_path: knots must be non-decreasing");
  }
  return sp;
}

int sample_count(const SplineEval& sp, const SplineConfig& cfg) {
  return cfg.output_samples > 0
             ? cfg.output_samples
             : 10 * static_cast<int>(sp.control.size());
}

}  // namespace

SmoothPath smooth_path(const Path& path, const SplineConfig& cfg,
                       double resolution) {
  const SplineEval sp = build_spline(path, cfg, resolution);
  const int m = sample_count(sp, cfg);
  SmoothPath out;
  out.reserve(m);
  for (int j = 0; j < m; ++j) {
    const double t = m == 1 ? 0.0 : static_cast<double>(j) / (m - 1);
    out.push_back(sp.at(t));
  }
  return out;
}

SmoothPath smooth_path_safe(const Path& path, const SplineConfig& cfg,
                            const OccupancyGrid& grid,
                            TraversabilityMatrix& matrix) {
  const double res = grid.resolution;
  const SplineEval sp = build_spline(path, cfg, res);
  const int m = sample_count(sp, cfg);

  auto sample_ok = [&](const Vec2& p) {
    const int col = static_cast<int>(std::floor(p.x / res));
    const int row = static_cast<int>(std::floor(p.y / res));
    if (!grid.in_bounds(col, row)) return false;
    return traversable(grid, matrix, {col, row});
  };

  // Knot span index for parameter t (span of the k+1 active controls).
  auto span_of = [&](double t) {
    int span = sp.degree;
    const int last = static_cast<int>(sp.control.size()) - 1;
    while (span < last && t >= sp.knots[span + 1]) ++span;
    return span;
  };

  const int n_spans = static_cast<int>(sp.control.size()) - sp.degree;
  std::vector<uint8_t> span_bad(std::max(1, n_spans), 0);
  std::vector<Vec2> samples(m);
  std::vector<int> spans(m);
  for (int j = 0; j < m; ++j) {
    const double t = m == 1 ? 0.0 : static_cast<double>(j) / (m - 1);
    samples[j] = sp.at(t);
    spans[j] = span_of(t) - sp.degree;  // 0-based span id
    if (!sample_ok(samples[j])) span_bad[spans[j]] = 1;
  }

  SmoothPath out;
  auto push = [&](const Vec2& p) {
    if (!out.empty() && (out.back() - p).norm() < 1e-12) return;
    out.push_back(p);
  };

  int emitted_span = -1;
  for (int j = 0; j < m; ++j) {
    const int s = spans[j];
    if (!span_bad[s]) {
      push(samples[j]);
      continue;
    }
    if (s == emitted_span) continue;  // raw cells already emitted for this span
    emitted_span = s;
    // Raw path slice covered by the span's active control points.
    const int lo = sp.control_to_path[s];
    const int hi = sp.control_to_path[std::min<std::size_t>(
        s + sp.degree, sp.control_to_path.size() - 1)];
    for (int i = lo; i <= hi; ++i) push(cell_center(path[i], res));
  }
  return out;
}

}  // namespace parkplan
