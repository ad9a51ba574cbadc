#pragma once

#include <cstdlib>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "parkplan/gridmap.hpp"
#include "parkplan/search.hpp"

namespace testutil {

inline unsigned rng_seed(unsigned fallback = 12345u) {
  if (const char* env = std::getenv("PARKPLAN_SEED")) {
    return static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  return fallback;
}

inline std::string data_path(const std::string& rel) {
  return std::string(PARKPLAN_DATA_DIR) + "/" + rel;
}

inline parkplan::OccupancyGrid random_grid(std::mt19937& rng, int width,
                                           int height, double occupancy) {
  parkplan::OccupancyGrid grid;
  grid.width = width;
  grid.height = height;
  grid.resolution = 1.0;
  grid.cells.resize(static_cast<std::size_t>(width) * height);
  std::bernoulli_distribution occ(occupancy);
  for (auto& c : grid.cells) c = occ(rng) ? 1 : 0;
  return grid;
}

// Brute-force ego-inflation oracle, independent of the library's disc
// scan: a cell is blocked iff any occupied (or out-of-bounds) cell lies
// within Euclidean distance radius of it.
inline bool oracle_blocked(const parkplan::OccupancyGrid& grid, int col,
                           int row, int radius) {
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      if (dc * dc + dr * dr > radius * radius) continue;
      const int cc = col + dc;
      const int rr = row + dr;
      if (!grid.in_bounds(cc, rr) || grid.occupied(cc, rr)) return true;
    }
  }
  return false;
}

// Reference shortest-path costs via std::priority_queue Dijkstra over the
// same 8-connected step costs. legal(cell) decides which cells exist.
template <typename LegalFn>
std::vector<double> dijkstra_costs(const parkplan::OccupancyGrid& grid,
                                   parkplan::Cell start, LegalFn legal,
                                   int connectivity = 8) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(grid.width) * grid.height,
                           inf);
  auto idx = [&](parkplan::Cell c) {
    return static_cast<std::size_t>(c.row) * grid.width + c.col;
  };
  using Item = std::pair<double, std::pair<int, int>>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  if (!legal(start)) return dist;
  dist[idx(start)] = 0.0;
  pq.push({0.0, {start.col, start.row}});
  const int dc8[] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int dr8[] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int dirs = connectivity == 8 ? 8 : 4;
  while (!pq.empty()) {
    const auto [d, cell] = pq.top();
    pq.pop();
    const parkplan::Cell c{cell.first, cell.second};
    if (d > dist[idx(c)]) continue;
    for (int i = 0; i < dirs; ++i) {
      const parkplan::Cell n{c.col + dc8[i], c.row + dr8[i]};
      if (!grid.in_bounds(n.col, n.row) || !legal(n)) continue;
      const double step = i < 4 ? 1.0 : std::sqrt(2.0);
      const double nd = d + step * grid.resolution;
      if (nd < dist[idx(n)]) {
        dist[idx(n)] = nd;
        pq.push({nd, {n.col, n.row}});
      }
    }
  }
  return dist;
}

// Path validity: endpoints, adjacency under the connectivity, legality.
template <typename LegalFn>
bool valid_path(const parkplan::Path& path, parkplan::Cell start,
                LegalFn legal, int connectivity = 8) {
  if (path.empty() || !(path.front() == start)) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!legal(path[i])) return false;
    if (i == 0) continue;
    const int dc = std::abs(path[i].col - path[i - 1].col);
    const int dr = std::abs(path[i].row - path[i - 1].row);
    if (dc > 1 || dr > 1 || (dc == 0 && dr == 0)) return false;
    if (connectivity == 4 && dc + dr > 1) return false;
  }
  return true;
}

// Exact cost fingerprint of an 8-connected path: (straight, diagonal)
// step counts. Costs a + b*sqrt(2) are equal iff the pairs are equal.
inline std::pair<int, int> step_counts(const parkplan::Path& path) {
  int straight = 0, diagonal = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const int dc = std::abs(path[i].col - path[i - 1].col);
    const int dr = std::abs(path[i].row - path[i - 1].row);
    if (dc + dr == 1) ++straight;
    else ++diagonal;
  }
  return {straight, diagonal};
}

}  // namespace testutil
