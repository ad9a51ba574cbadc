#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parkplan/gridmap.hpp"

namespace parkplan {

enum class SearchMode {
  kBaseline,               // point-robot A*, w=1, p=0, linear-scan open list
  kImprovedUnidirectional, // ego volume + weighted heuristic + heap
  kImprovedBidirectional,  // two frontiers meeting in the middle
};

struct SearchConfig {
  double w_far = 2.0;          // heuristic weight when far from the goal
  double w_near = 0.8;         // heuristic weight inside near_threshold
  double near_threshold = 20.0;  // meters
  double offset_p = 0.001;     // tie-breaking offset added to the weight
  int connectivity = 8;        // 4 or 8 neighbors
  SearchMode mode = SearchMode::kImprovedBidirectional;
  bool use_linear_open_list = false;  // forced on for the baseline
};

struct SearchNode {
  Cell cell;
  double g = 0.0;
  double h = 0.0;
  double f = 0.0;
  std::optional<Cell> parent;
  std::uint64_t seq = 0;  // insertion order, breaks f ties FIFO
};

/// Binary min-heap keyed by (f, seq).
class OpenList {
 public:
  void push(SearchNode node);
  SearchNode pop_min();
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  void sift_up(std::size_t i);
  void sift_down(std::size_t i);
  std::vector<SearchNode> heap_;
  std::uint64_t next_seq_ = 0;
};

/// Unsorted list popped by linear scan; same (f, seq) order as OpenList.
class LinearOpenList {
 public:
  void push(SearchNode node);
  SearchNode pop_min();
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<SearchNode> nodes_;
  std::uint64_t next_seq_ = 0;
};

/// Parent pointers stored per cell; a root points to itself.
struct ParentMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> parent;  // flat index of parent, -1 = unset

  ParentMap() = default;
  ParentMap(int w, int h)
      : width(w), height(h), parent(static_cast<std::size_t>(w) * h, -1) {}

  bool has(Cell c) const {
    return parent[static_cast<std::size_t>(c.row) * width + c.col] >= 0;
  }
  void set(Cell c, Cell p) {
    parent[static_cast<std::size_t>(c.row) * width + c.col] =
        static_cast<std::int32_t>(p.row) * width + p.col;
  }
  Cell get(Cell c) const {
    const std::int32_t idx =
        parent[static_cast<std::size_t>(c.row) * width + c.col];
    return {idx % width, idx / width};
  }
};

using Path = std::vector<Cell>;

struct SearchStats {
  std::uint64_t expansions = 0;  // both frontiers
  std::uint64_t disc_scans = 0;
  double search_ms = 0.0;
  double reconstruct_ms = 0.0;
  std::vector<Cell> expanded;  // forward-frontier close order
};

struct PlanResult {
  Path path;
  bool reached_goal = false;
  SearchStats stats;
};

double euclid(Cell a, Cell b, double resolution = 1.0);

/// f(n) = g(n) + (w + p) * h(n) with w switched on distance to the goal.
double score(Cell node_cell, Cell goal_cell, double g, const SearchConfig& cfg,
             double resolution = 1.0);

/// Splice the two parent chains meeting at `meet` into one start-to-goal
/// path. For a unidirectional search pass an empty second map.
Path reconstruct(Cell meet, const ParentMap& parents1, const ParentMap& parents2);

PlanResult plan(const OccupancyGrid& grid, TraversabilityMatrix& matrix,
                Cell start, Cell goal, const SearchConfig& cfg);

double path_cost(const Path& path, double resolution = 1.0);

}  // namespace parkplan
