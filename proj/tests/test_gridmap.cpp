#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "parkplan/gridmap.hpp"
#include "test_util.hpp"

using namespace parkplan;

namespace {

OccupancyGrid from_ascii(const std::string& body) {
  const std::vector<uint8_t> bytes(body.begin(), body.end());
  return load_pgm(bytes, 128);
}

}  // namespace

TEST_CASE("load_pgm parses ASCII P2") {
  const auto grid = from_ascii("P2\n2 2\n255\n0 255\n255 0\n");
  CHECK(grid.width == 2);
  CHECK(grid.height == 2);
  CHECK(grid.occupied(0, 0));
  CHECK_FALSE(grid.occupied(1, 0));
  CHECK_FALSE(grid.occupied(0, 1));
  CHECK(grid.occupied(1, 1));
}

TEST_CASE("load_pgm parses binary P5 and honors the threshold") {
  std::string body = "P5\n3 1\n255\n";
  body.push_back(static_cast<char>(10));
  body.push_back(static_cast<char>(127));
  body.push_back(static_cast<char>(128));
  const std::vector<uint8_t> bytes(body.begin(), body.end());
  const auto grid = load_pgm(bytes, 128);
  CHECK(grid.occupied(0, 0));
  CHECK(grid.occupied(1, 0));        // 127 < 128
  CHECK_FALSE(grid.occupied(2, 0));  // 128 is free
}

TEST_CASE("load_pgm handles comments") {
  const auto grid = from_ascii("P2\n# a comment\n2 1 # inline\n255\n7 200\n");
  CHECK(grid.width == 2);
  CHECK(grid.occupied(0, 0));
  CHECK_FALSE(grid.occupied(1, 0));
}

TEST_CASE("load_pgm rejects malformed input") {
  CHECK_THROWS_AS(from_ascii("P3\n2 2\n255\n0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(from_ascii("P2\n0 2\n255\n"), ParseError);
  CHECK_THROWS_AS(from_ascii("P2\n2 2\n255\n0 0 0\n"), ParseError);  // truncated
  CHECK_THROWS_AS(from_ascii("P2\nx 2\n255\n0 0 0 0\n"), ParseError);
  std::string p5 = "P5\n4 4\n255\n";
  p5.append(3, '\0');  // 3 of 16 raster bytes
  const std::vector<uint8_t> bytes(p5.begin(), p5.end());
  CHECK_THROWS_AS(load_pgm(bytes, 128), ParseError);
}

TEST_CASE("bundled 200x200 lot map loads") {
  const auto grid = load_pgm_file(testutil::data_path("maps/lot200.pgm"), 128);
  CHECK(grid.width == 200);
  CHECK(grid.height == 200);
  CHECK(grid.occupied_count() >=
        static_cast<std::size_t>(0.4 * grid.width * grid.height));
}

TEST_CASE("bounding_radius_cells") {
  VehicleParams car;
  car.length = 0.0;
  car.width = 0.0;
  CHECK(bounding_radius_cells(car, 1.0, 0.0) == 0);
  car.length = 4.0;
  car.width = 2.0;
  CHECK(bounding_radius_cells(car, 1.0, 0.0) == 3);   // ceil(sqrt(5))
  CHECK(bounding_radius_cells(car, 1.0, 0.26) == 3);  // sqrt(5)+0.26 = 2.496
  CHECK(bounding_radius_cells(car, 0.5, 0.0) == 5);
  CHECK_THROWS_AS(bounding_radius_cells(car, 0.0, 0.0), DomainError);
}

TEST_CASE("traversable scans lazily and memoizes") {
  OccupancyGrid grid;
  grid.width = grid.height = 5;
  grid.cells.assign(25, 0);
  TraversabilityMatrix matrix(5, 5, 1);

  CHECK(traversable(grid, matrix, {2, 2}));
  CHECK(matrix.state(2, 2) == 1);
  CHECK(matrix.disc_scans == 1);
  CHECK(traversable(grid, matrix, {2, 2}));
  CHECK(matrix.disc_scans == 1);  // memoized, no rescan

  CHECK_THROWS_AS(traversable(grid, matrix, {5, 0}), BoundsError);
  CHECK_THROWS_AS(traversable(grid, matrix, {0, -1}), BoundsError);
}

TEST_CASE("traversable around a single obstacle") {
  OccupancyGrid grid;
  grid.width = grid.height = 7;
  grid.cells.assign(49, 0);
  grid.cells[3 * 7 + 3] = 1;  // center (3,3)
  TraversabilityMatrix matrix(7, 7, 1);
  CHECK_FALSE(traversable(grid, matrix, {3, 2}));  // distance 1 <= radius
  CHECK(matrix.state(3, 2) == -1);
  CHECK(traversable(grid, matrix, {2, 2}));  // distance sqrt(2) > radius
  CHECK(matrix.state(2, 2) == 1);
}

TEST_CASE("map edge counts as occupied") {
  OccupancyGrid grid;
  grid.width = grid.height = 5;
  grid.cells.assign(25, 0);
  TraversabilityMatrix matrix(5, 5, 1);
  CHECK_FALSE(traversable(grid, matrix, {0, 0}));  // disc leaves the map
  CHECK(traversable(grid, matrix, {1, 1}));
}

TEST_CASE("inflate_eager trivial grids") {
  OccupancyGrid grid;
  grid.width = 4;
  grid.height = 3;
  grid.cells.assign(12, 0);
  const auto all_free = inflate_eager(grid, 0);
  for (int8_t s : all_free.states) CHECK(s == 1);

  grid.cells.assign(12, 1);
  const auto all_blocked = inflate_eager(grid, 0);
  for (int8_t s : all_blocked.states) CHECK(s == -1);
}

TEST_CASE("lazy/eager equivalence and oracle agreement on random grids") {
  std::mt19937 rng(testutil::rng_seed());
  for (int trial = 0; trial < 25; ++trial) {
    const auto grid = testutil::random_grid(rng, 20, 20, 0.2);
    const int radius = 1 + trial % 3;
    const auto eager = inflate_eager(grid, radius);
    TraversabilityMatrix lazy(20, 20, radius);
    for (int row = 0; row < 20; ++row) {
      for (int col = 0; col < 20; ++col) {
        const bool allowed = traversable(grid, lazy, {col, row});
        CHECK(lazy.state(col, row) == eager.state(col, row));
        CHECK(allowed == !testutil::oracle_blocked(grid, col, row, radius));
      }
    }
  }
}

TEST_CASE("prohibited set grows monotonically with radius") {
  std::mt19937 rng(testutil::rng_seed() + 1);
  const auto grid = testutil::random_grid(rng, 20, 20, 0.15);
  const auto small = inflate_eager(grid, 1);
  const auto large = inflate_eager(grid, 3);
  for (std::size_t i = 0; i < small.states.size(); ++i) {
    if (small.states[i] == -1) CHECK(large.states[i] == -1);
  }
}

TEST_CASE("radius 0 reduces to raw occupancy") {
  std::mt19937 rng(testutil::rng_seed() + 2);
  const auto grid = testutil::random_grid(rng, 15, 15, 0.3);
  const auto matrix = inflate_eager(grid, 0);
  for (int row = 0; row < 15; ++row) {
    for (int col = 0; col < 15; ++col) {
      CHECK((matrix.state(col, row) == -1) == grid.occupied(col, row));
    }
  }
}

TEST_CASE("write_pgm round-trips") {
  std::mt19937 rng(testutil::rng_seed() + 3);
  const auto grid = testutil::random_grid(rng, 17, 9, 0.4);
  const auto bytes = write_pgm(grid);
  const auto back = load_pgm(bytes, 128);
  CHECK(back.width == grid.width);
  CHECK(back.height == grid.height);
  CHECK(back.cells == grid.cells);
}
