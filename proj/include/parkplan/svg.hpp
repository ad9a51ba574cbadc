#pragma once

#include <string>
#include <vector>

#include "parkplan/geometry.hpp"
#include "parkplan/gridmap.hpp"

namespace parkplan {

/// Minimal SVG writer for plan/trajectory overlays. Coordinates are in
/// meters; y grows downward, matching the grid row direction.
class SvgWriter {
 public:
  SvgWriter(double width_m, double height_m, double pixels_per_meter = 4.0);

  void add_grid(const OccupancyGrid& grid);
  void add_polyline(const std::vector<Vec2>& points, const std::string& color,
                    double stroke_width = 0.3);
  void add_polygon(const Polygon& poly, const std::string& fill,
                   const std::string& stroke, double opacity = 1.0);
  void add_circle(const Vec2& center, double radius, const std::string& color);
  void add_text(const Vec2& pos, const std::string& text, double size = 2.0);

  std::string str() const;
  void save(const std::string& path) const;

 private:
  double scale_;
  double width_px_;
  double height_px_;
  std::vector<std::string> elements_;
};

}  // namespace parkplan
