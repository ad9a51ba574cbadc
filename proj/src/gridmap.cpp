#include "parkplan/gridmap.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace parkplan {

Vec2 cell_center(Cell c, double resolution) {
  return {(c.col + 0.5) * resolution, (c.row + 0.5) * resolution};
}

std::size_t OccupancyGrid::occupied_count() const {
  std::size_t n = 0;
  for (uint8_t c : cells) n += c;
  return n;
}

namespace {

struct HeaderCursor {
  std::span<const uint8_t> bytes;
  std::size_t pos = 0;

  // Next whitespace-separated token, skipping '#' comments to end of line.
  std::string next_token() {
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < bytes.size() &&
           !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#') {
      tok.push_back(static_cast<char>(bytes[pos]));
      ++pos;
    }
    return tok;
  }

  int next_int(const char* what) {
    const std::string tok = next_token();
    if (tok.empty()) throw ParseError(std::string("pgm: missing ") + what);
    for (char c : tok) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("pgm: bad ") + what + " '" + tok + "'");
      }
    }
    return std::stoi(tok);
  }
};

}  // namespace

OccupancyGrid load_pgm(std::span<const uint8_t> bytes, int occupied_threshold,
                       double resolution) {
  if (occupied_threshold < 0 || occupied_threshold > 255) {
    throw DomainError("pgm: occupied_threshold outside 0-255");
  }
  if (resolution <= 0.0) throw DomainError("pgm: resolution must be positive");
  HeaderCursor cur{bytes};
  const std::string magic = cur.next_token();
  const bool ascii = magic == "P2";
  if (!ascii && magic != "P5") {
    throw ParseError("pgm: unsupported magic '" + magic + "'");
  }
  const int width = cur.next_int("width");
  const int height = cur.next_int("height");
  const int maxval = cur.next_int("maxval");
  if (width <= 0 || height <= 0) throw ParseError("pgm: zero dimension");
  if (maxval <= 0 || maxval > 255) throw ParseError("pgm: unsupported maxval");

  OccupancyGrid grid;
  grid.width = width;
  grid.height = height;
  grid.resolution = resolution;
  grid.cells.resize(static_cast<std::size_t>(width) * height);

  const std::size_t n = grid.cells.size();
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      const int v = cur.next_int("pixel");
      if (v > maxval) throw ParseError("pgm: pixel above maxval");
      grid.cells[i] = v < occupied_threshold ? 1 : 0;
    }
  } else {
    // Binary raster begins after exactly one whitespace byte past maxval.
    if (cur.pos >= bytes.size()) throw ParseError("pgm: truncated raster");
    ++cur.pos;
    if (bytes.size() - cur.pos < n) throw ParseError("pgm: truncated raster");
    for (std::size_t i = 0; i < n; ++i) {
      grid.cells[i] = bytes[cur.pos + i] < occupied_threshold ? 1 : 0;
    }
  }
  return grid;
}

OccupancyGrid load_pgm_file(const std::string& path, int occupied_threshold,
                            double resolution) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open map file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return load_pgm(bytes, occupied_threshold, resolution);
}

std::vector<uint8_t> write_pgm(const OccupancyGrid& grid) {
  char header[64];
  const int len = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n",
                                grid.width, grid.height);
  std::vector<uint8_t> out(header, header + len);
  out.reserve(out.size() + grid.cells.size());
  for (uint8_t c : grid.cells) out.push_back(c ? 0 : 255);
  return out;
}

int bounding_radius_cells(const VehicleParams& vehicle, double resolution,
                          double margin) {
  if (resolution <= 0.0) throw DomainError("bounding_radius_cells: resolution");
  if (vehicle.length < 0.0 || vehicle.width < 0.0 || margin < 0.0) {
    throw DomainError("bounding_radius_cells: negative dimension");
  }
  const double half_diagonal = 0.5 * std::hypot(vehicle.length, vehicle.width);
  return static_cast<int>(std::ceil((half_diagonal + margin) / resolution));
}

namespace {

// Disc scan shared by the lazy and eager paths: any occupied cell (or the
// map edge) within Euclidean distance radius of (col,row)?
bool disc_blocked(const OccupancyGrid& grid, int col, int row, int radius) {
  const long r2 = static_cast<long>(radius) * radius;
  for (int dr = -radius; dr <= radius; ++dr) {
    const long rem = r2 - static_cast<long>(dr) * dr;
    if (rem < 0) continue;
    int span = static_cast<int>(std::sqrt(static_cast<double>(rem)));
    while (static_cast<long>(span + 1) * (span + 1) <= rem) ++span;
    while (static_cast<long>(span) * span > rem) --span;
    const int rr = row + dr;
    for (int dc = -span; dc <= span; ++dc) {
      const int cc = col + dc;
      if (!grid.in_bounds(cc, rr) || grid.occupied(cc, rr)) return true;
    }
  }
  return false;
}

}  // namespace

bool traversable(const OccupancyGrid& grid, TraversabilityMatrix& matrix,
                 Cell cell) {
  if (!grid.in_bounds(cell.col, cell.row)) {
    throw BoundsError("traversable: cell out of bounds");
  }
  if (matrix.width != grid.width || matrix.height != grid.height) {
    throw DomainError("traversable: matrix/grid size mismatch");
  }
  const std::size_t idx =
      static_cast<std::size_t>(cell.row) * matrix.width + cell.col;
  int8_t& state = matrix.states[idx];
  if (state == 0) {
    ++matrix.disc_scans;
    state = disc_blocked(grid, cell.col, cell.row, matrix.radius_cells) ? -1 : 1;
  }
  return state == 1;
}

TraversabilityMatrix inflate_eager(const OccupancyGrid& grid, int radius_cells) {
  if (radius_cells < 0) throw DomainError("inflate_eager: negative radius");
  TraversabilityMatrix matrix(grid.width, grid.height, radius_cells);
  std::size_t idx = 0;
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col, ++idx) {
      ++matrix.disc_scans;
      matrix.states[idx] =
          disc_blocked(grid, col, row, radius_cells) ? -1 : 1;
    }
  }
  return matrix;
}

}  // namespace parkplan
