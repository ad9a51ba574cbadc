#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parkplan/errors.hpp"
#include "parkplan/vehicle.hpp"

namespace parkplan {

struct Cell {
  int col = 0;
  int row = 0;
  bool operator==(const Cell&) const = default;
};

/// Center of a cell in meters.
Vec2 cell_center(Cell c, double resolution);

/// Free/occupied raster. Immutable after load; row-major, row 0 on top.
struct OccupancyGrid {
  int width = 0;
  int height = 0;
  double resolution = 1.0;  // meters per cell
  std::vector<uint8_t> cells;  // 1 = occupied

  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width && row >= 0 && row < height;
  }
  bool occupied(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * width + col] != 0;
  }
  std::size_t occupied_count() const;
};

/// Memoized tri-state passability per cell: -1 prohibited, 0 unknown,
/// 1 allowed. Entries are written at most once. One search owns one
/// matrix; do not share across concurrent queries.
struct TraversabilityMatrix {
  int width = 0;
  int height = 0;
  int radius_cells = 0;
  std::vector<int8_t> states;
  std::uint64_t disc_scans = 0;  // instrumentation: full disc scans performed

  TraversabilityMatrix() = default;
  TraversabilityMatrix(int w, int h, int radius)
      : width(w), height(h), radius_cells(radius),
        states(static_cast<std::size_t>(w) * h, 0) {}

  int8_t state(int col, int row) const {
    return states[static_cast<std::size_t>(row) * width + col];
  }
};

/// Parse a PGM image (ASCII "P2" or binary "P5"). A cell is occupied iff
/// its gray value is below occupied_threshold (dark pixels are obstacles).
OccupancyGrid load_pgm(std::span<const uint8_t> bytes, int occupied_threshold,
                       double resolution = 1.0);

OccupancyGrid load_pgm_file(const std::string& path, int occupied_threshold,
                            double resolution = 1.0);

/// Write the grid back out as binary PGM (occupied = 0, free = 255).
std::vector<uint8_t> write_pgm(const OccupancyGrid& grid);

/// Inflation radius covering the vehicle footprint: half body diagonal
/// plus margin, rounded up to whole cells.
int bounding_radius_cells(const VehicleParams& vehicle, double resolution,
                          double margin);

/// Ego-inflated passability with lazy memoization. Unknown cells get a
/// one-time disc scan of radius_cells; out-of-bounds counts as occupied.
bool traversable(const OccupancyGrid& grid, TraversabilityMatrix& matrix,
                 Cell cell);

/// Resolve every cell up front (the timing baseline). Produces the same
/// +/-1 labels traversable() would.
TraversabilityMatrix inflate_eager(const OccupancyGrid& grid, int radius_cells);

}  // namespace parkplan
