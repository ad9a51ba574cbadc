// Generates the bundled map fixtures: a 200x200 parking-lot grid with
// carved driving corridors, and rasterized mini-maps for the parking
// scenarios (from their obstacle polygons).

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "parkplan/gridmap.hpp"
#include "parkplan/scenario.hpp"

namespace pp = parkplan;

namespace {

void save_pgm(const pp::OccupancyGrid& grid, const std::string& path) {
  const auto bytes = pp::write_pgm(grid);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  std::printf("wrote %s (%dx%d, %.1f%% occupied)\n", path.c_str(), grid.width,
              grid.height,
              100.0 * static_cast<double>(grid.occupied_count()) /
                  (grid.width * grid.height));
}

void carve(pp::OccupancyGrid& grid, int c0, int c1, int r0, int r1) {
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      grid.cells[static_cast<std::size_t>(r) * grid.width + c] = 0;
    }
  }
}

// 200x200 lot: everything blocked except four driving corridors. The
// carved widths leave >= 7 cells of clearance for the inflated planner.
pp::OccupancyGrid make_lot200() {
  pp::OccupancyGrid grid;
  grid.width = 200;
  grid.height = 200;
  grid.resolution = 1.0;
  grid.cells.assign(200 * 200, 1);
  carve(grid, 88, 102, 10, 190);   // north-south spine
  carve(grid, 20, 180, 128, 140);  // south cross aisle
  carve(grid, 20, 180, 58, 72);    // north cross aisle
  carve(grid, 135, 148, 58, 140);  // east connector
  return grid;
}

pp::OccupancyGrid rasterize(const pp::Scenario& scn, int width, int height) {
  pp::OccupancyGrid grid;
  grid.width = width;
  grid.height = height;
  grid.resolution = scn.resolution;
  grid.cells.assign(static_cast<std::size_t>(width) * height, 0);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const pp::Vec2 center = pp::cell_center({c, r}, scn.resolution);
      for (const pp::Polygon& poly : scn.obstacles) {
        if (pp::point_in_convex_polygon(center, poly)) {
          grid.cells[static_cast<std::size_t>(r) * width + c] = 1;
          break;
        }
      }
    }
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr,
                 "usage: mapgen lot200 <out.pgm>\n"
                 "       mapgen scenario <scenario.json> <out.pgm> [W H]\n");
    return 2;
  }
  const std::string cmd = argv[1];
  if (cmd == "lot200" && argc >= 3) {
    save_pgm(make_lot200(), argv[2]);
    return 0;
  }
  if (cmd == "scenario" && argc >= 4) {
    const pp::Scenario scn = pp::load_scenario(argv[2]);
    const int w = argc >= 6 ? std::atoi(argv[4]) : 36;
    const int h = argc >= 6 ? std::atoi(argv[5]) : 36;
    save_pgm(rasterize(scn, w, h), argv[3]);
    return 0;
  }
  std::fprintf(stderr, "mapgen: bad arguments\n");
  return 2;
}
