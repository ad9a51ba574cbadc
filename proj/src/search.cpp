#include "parkplan/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "parkplan/errors.hpp"

namespace parkplan {

double euclid(Cell a, Cell b, double resolution) {
  const double dx = a.col - b.col;
  const double dy = a.row - b.row;
  return std::sqrt(dx * dx + dy * dy) * resolution;
}

double score(Cell node_cell, Cell goal_cell, double g, const SearchConfig& cfg,
             double resolution) {
  const double h = euclid(node_cell, goal_cell, resolution);
  const double w = h < cfg.near_threshold ? cfg.w_near : cfg.w_far;
  return g + (w + cfg.offset_p) * h;
}

namespace {

bool node_less(const SearchNode& a, const SearchNode& b) {
  if (a.f != b.f) return a.f < b.f;
  return a.seq < b.seq;
}

}  // namespace

void OpenList::push(SearchNode node) {
  node.seq = next_seq_++;
  heap_.push_back(node);
  sift_up(heap_.size() - 1);
}

SearchNode OpenList::pop_min() {
  if (heap_.empty()) throw EmptyError("open list empty");
  SearchNode top = heap_.front();
  heap_.front() = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) sift_down(0);
  return top;
}

void OpenList::sift_up(std::size_t i) {
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!node_less(heap_[i], heap_[parent])) break;
    std::swap(heap_[i], heap_[parent]);
    i = parent;
  }
}

void OpenList::sift_down(std::size_t i) {
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t smallest = i;
    const std::size_t l = 2 * i + 1;
    const std::size_t r = 2 * i + 2;
    if (l < n && node_less(heap_[l], heap_[smallest])) smallest = l;
    if (r < n && node_less(heap_[r], heap_[smallest])) smallest = r;
    if (smallest == i) break;
    std::swap(heap_[i], heap_[smallest]);
    i = smallest;
  }
}

void LinearOpenList::push(SearchNode node) {
  node.seq = next_seq_++;
  nodes_.push_back(node);
}

SearchNode LinearOpenList::pop_min() {
  if (nodes_.empty()) throw EmptyError("open list empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (node_less(nodes_[i], nodes_[best])) best = i;
  }
  SearchNode out = nodes_[best];
  nodes_[best] = nodes_.back();
  nodes_.pop_back();
  return out;
}

Path reconstruct(Cell meet, const ParentMap& parents1,
                 const ParentMap& parents2) {
  if (parents1.parent.empty() || !parents1.has(meet)) {
    throw InternalError("reconstruct: meet missing from forward parents");
  }
  Path path;
  Cell c = meet;
  std::size_t guard = parents1.parent.size() + 1;
  for (;;) {
    path.push_back(c);
    const Cell p = parents1.get(c);
    if (p == c) break;
    if (!parents1.has(p) || --guard == 0) {
      throw InternalError("reconstruct: broken forward parent chain");
    }
    c = p;
  }
  std::reverse(path.begin(), path.end());

  if (!parents2.parent.empty() && parents2.has(meet)) {
    Cell c2 = meet;
    std::size_t guard2 = parents2.parent.size() + 1;
    for (;;) {
      const Cell p = parents2.get(c2);
      if (p == c2) break;
      if (!parents2.has(p) || --guard2 == 0) {
        throw InternalError("reconstruct: broken backward parent chain");
      }
      path.push_back(p);
      c2 = p;
    }
  }
  return path;
}

double path_cost(const Path& path, double resolution) {
  double cost = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    cost += euclid(path[i - 1], path[i], resolution);
  }
  return cost;
}

namespace {

struct NeighborStep {
  int dc;
  int dr;
  double cost;  // in cells; scaled by resolution on use
};

std::vector<NeighborStep> neighbor_steps(int connectivity) {
  const double diag = std::sqrt(2.0);
  std::vector<NeighborStep> steps = {
      {1, 0, 1.0}, {-1, 0, 1.0}, {0, 1, 1.0}, {0, -1, 1.0}};
  if (connectivity == 8) {
    steps.push_back({1, 1, diag});
    steps.push_back({1, -1, diag});
    steps.push_back({-1, 1, diag});
    steps.push_back({-1, -1, diag});
  } else if (connectivity != 4) {
    throw DomainError("plan: connectivity must be 4 or 8");
  }
  return steps;
}

template <typename ListT>
struct Frontier {
  ListT open;
  std::vector<uint8_t> closed;
  std::vector<double> best_g;
  ParentMap parents;
  Cell root;
  std::optional<Cell> last_closed;
  bool alive = false;

  Frontier(int w, int h, Cell root_cell)
      : closed(static_cast<std::size_t>(w) * h, 0),
        best_g(static_cast<std::size_t>(w) * h,
               std::numeric_limits<double>::infinity()),
        parents(w, h),
        root(root_cell) {}
};

template <typename ListT>
PlanResult plan_impl(const OccupancyGrid& grid, TraversabilityMatrix& matrix,
                     Cell start, Cell goal, const SearchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  const bool baseline = cfg.mode == SearchMode::kBaseline;
  const bool bidirectional = cfg.mode == SearchMode::kImprovedBidirectional;
  const double res = grid.resolution;

  SearchConfig eff = cfg;
  if (baseline) {
    eff.w_far = 1.0;
    eff.w_near = 1.0;
    eff.offset_p = 0.0;
  }

  auto legal = [&](Cell c) {
    if (baseline) return !grid.occupied(c.col, c.row);
    return traversable(grid, matrix, c);
  };

  if (!grid.in_bounds(start.col, start.row)) {
    throw BoundsError("plan: start out of bounds");
  }
  if (!grid.in_bounds(goal.col, goal.row)) {
    throw BoundsError("plan: goal out of bounds");
  }
  const std::uint64_t scans0 = matrix.disc_scans;
  if (!legal(start)) throw StartBlockedError("plan: start not traversable");

  PlanResult result;
  auto finish = [&](Path path, bool reached) {
    result.path = std::move(path);
    result.reached_goal = reached;
    result.stats.disc_scans = matrix.disc_scans - scans0;
    return result;
  };

  if (start == goal) {
    result.stats.search_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    return finish({start}, true);
  }

  const auto steps = neighbor_steps(cfg.connectivity);
  auto idx_of = [&](Cell c) {
    return static_cast<std::size_t>(c.row) * grid.width + c.col;
  };

  Frontier<ListT> fwd(grid.width, grid.height, start);
  Frontier<ListT> bwd(grid.width, grid.height, goal);

  auto seed = [&](Frontier<ListT>& side, Cell other_root) {
    side.parents.set(side.root, side.root);
    side.best_g[idx_of(side.root)] = 0.0;
    SearchNode n;
    n.cell = side.root;
    n.g = 0.0;
    n.h = euclid(side.root, other_root, res);
    n.f = score(side.root, other_root, 0.0, eff, res);
    side.open.push(n);
    side.alive = true;
  };

  seed(fwd, goal);
  if (bidirectional && legal(goal)) seed(bwd, start);

  // Explored node nearest the goal, for the unreachable-spot fallback.
  Cell temp_best = start;
  double temp_best_d = euclid(start, goal, res);

  std::optional<Cell> meet;
  bool forward_turn = true;

  // Pops one node from `side`, closes it, expands its neighbors. Returns
  // false once the side's open list is exhausted.
  auto expand_one = [&](Frontier<ListT>& side, Frontier<ListT>& other,
                        bool is_forward) {
    SearchNode node;
    bool popped = false;
    while (!side.open.empty()) {
      node = side.open.pop_min();
      if (!side.closed[idx_of(node.cell)]) {
        popped = true;
        break;
      }
    }
    if (!popped) return false;

    side.closed[idx_of(node.cell)] = 1;
    side.last_closed = node.cell;
    ++result.stats.expansions;

    if (is_forward) {
      result.stats.expanded.push_back(node.cell);
      const double d = euclid(node.cell, goal, res);
      if (d < temp_best_d) {
        temp_best_d = d;
        temp_best = node.cell;
      }
    }

    if (bidirectional) {
      if (other.closed[idx_of(node.cell)] || node.cell == other.root) {
        meet = node.cell;
        return true;
      }
    } else if (node.cell == goal) {
      meet = node.cell;
      return true;
    }

    const Cell target =
        bidirectional ? other.last_closed.value_or(other.root) : goal;
    for (const NeighborStep& s : steps) {
      const Cell nc{node.cell.col + s.dc, node.cell.row + s.dr};
      if (!grid.in_bounds(nc.col, nc.row)) continue;
      if (side.closed[idx_of(nc)]) continue;
      if (!legal(nc)) continue;
      const double ng = node.g + s.cost * res;
      double& bg = side.best_g[idx_of(nc)];
      if (ng >= bg) continue;
      bg = ng;
      side.parents.set(nc, node.cell);
      SearchNode child;
      child.cell = nc;
      child.g = ng;
      child.h = euclid(nc, target, res);
      child.f = score(nc, target, ng, eff, res);
      child.parent = node.cell;
      side.open.push(child);
    }
    return true;
  };

  while (!meet && (fwd.alive || bwd.alive)) {
    Frontier<ListT>* side = nullptr;
    bool is_forward = true;
    if (bidirectional && bwd.alive &&
        (!forward_turn || !fwd.alive)) {
      side = &bwd;
      is_forward = false;
    } else if (fwd.alive) {
      side = &fwd;
    } else {
      side = &bwd;
      is_forward = false;
    }
    forward_turn = !forward_turn;
    if (!expand_one(*side, is_forward ? bwd : fwd, is_forward)) {
      side->alive = false;
    }
  }

  result.stats.search_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();

  const auto t1 = clock::now();
  Path path;
  bool reached = false;
  if (meet) {
    path = bidirectional ? reconstruct(*meet, fwd.parents, bwd.parents)
                         : reconstruct(*meet, fwd.parents, ParentMap{});
    reached = true;
  } else {
    if (baseline) throw PathNotFoundError("plan: no path to goal");
    path = reconstruct(temp_best, fwd.parents, ParentMap{});
  }
  result.stats.reconstruct_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t1).count();
  return finish(std::move(path), reached);
}

}  // namespace

PlanResult plan(const OccupancyGrid& grid, TraversabilityMatrix& matrix,
                Cell start, Cell goal, const SearchConfig& cfg) {
  const bool linear =
      cfg.mode == SearchMode::kBaseline || cfg.use_linear_open_list;
  if (linear) return plan_impl<LinearOpenList>(grid, matrix, start, goal, cfg);
  return plan_impl<OpenList>(grid, matrix, start, goal, cfg);
}

}  // namespace parkplan
