#include "parkplan/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "parkplan/errors.hpp"

namespace parkplan {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

SvgWriter::SvgWriter(double width_m, double height_m, double pixels_per_meter)
    : scale_(pixels_per_meter),
      width_px_(width_m * pixels_per_meter),
      height_px_(height_m * pixels_per_meter) {}

void SvgWriter::add_grid(const OccupancyGrid& grid) {
  // Merge horizontal runs of occupied cells into single rects.
  std::ostringstream os;
  os << "<g fill=\"#222222\">";
  for (int row = 0; row < grid.height; ++row) {
    int run_start = -1;
    for (int col = 0; col <= grid.width; ++col) {
      const bool occ = col < grid.width && grid.occupied(col, row);
      if (occ && run_start < 0) run_start = col;
      if (!occ && run_start >= 0) {
        os << "<rect x=\"" << fmt(run_start * grid.resolution * scale_)
           << "\" y=\"" << fmt(row * grid.resolution * scale_) << "\" width=\""
           << fmt((col - run_start) * grid.resolution * scale_)
           << "\" height=\"" << fmt(grid.resolution * scale_) << "\"/>";
        run_start = -1;
      }
    }
  }
  os << "</g>";
  elements_.push_back(os.str());
}

void SvgWriter::add_polyline(const std::vector<Vec2>& points,
                             const std::string& color, double stroke_width) {
  if (points.size() < 2) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
     << fmt(stroke_width * scale_) << "\" points=\"";
  for (const Vec2& p : points) {
    os << fmt(p.x * scale_) << "," << fmt(p.y * scale_) << " ";
  }
  os << "\"/>";
  elements_.push_back(os.str());
}

void SvgWriter::add_polygon(const Polygon& poly, const std::string& fill,
                            const std::string& stroke, double opacity) {
  std::ostringstream os;
  os << "<polygon fill=\"" << fill << "\" stroke=\"" << stroke
     << "\" stroke-width=\"" << fmt(0.08 * scale_) << "\" fill-opacity=\""
     << fmt(opacity) << "\" points=\"";
  for (const Vec2& p : poly) {
    os << fmt(p.x * scale_) << "," << fmt(p.y * scale_) << " ";
  }
  os << "\"/>";
  elements_.push_back(os.str());
}

void SvgWriter::add_circle(const Vec2& center, double radius,
                           const std::string& color) {
  std::ostringstream os;
  os << "<circle cx=\"" << fmt(center.x * scale_) << "\" cy=\""
     << fmt(center.y * scale_) << "\" r=\"" << fmt(radius * scale_)
     << "\" fill=\"" << color << "\"/>";
  elements_.push_back(os.str());
}

void SvgWriter::add_text(const Vec2& pos, const std::string& text,
                         double size) {
  std::ostringstream os;
  os << "<text x=\"" << fmt(pos.x * scale_) << "\" y=\"" << fmt(pos.y * scale_)
     << "\" font-size=\"" << fmt(size * scale_) << "\" fill=\"#333333\">"
     << text << "</text>";
  elements_.push_back(os.str());
}

std::string SvgWriter::str() const {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_px_)
     << "\" height=\"" << fmt(height_px_) << "\" viewBox=\"0 0 "
     << fmt(width_px_) << " " << fmt(height_px_) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const std::string& e : elements_) os << e << "\n";
  os << "</svg>\n";
  return os.str();
}

void SvgWriter::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write SVG: " + path);
  out << str();
}

}  // namespace parkplan
