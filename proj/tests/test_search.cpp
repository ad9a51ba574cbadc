#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "parkplan/search.hpp"
#include "test_util.hpp"

using namespace parkplan;

namespace {

TraversabilityMatrix point_matrix(const OccupancyGrid& grid) {
  return TraversabilityMatrix(grid.width, grid.height, 0);
}

SearchConfig unweighted(SearchMode mode) {
  SearchConfig cfg;
  cfg.w_far = 1.0;
  cfg.w_near = 1.0;
  cfg.offset_p = 0.0;
  cfg.mode = mode;
  return cfg;
}

OccupancyGrid empty_grid(int w, int h) {
  OccupancyGrid grid;
  grid.width = w;
  grid.height = h;
  grid.cells.assign(static_cast<std::size_t>(w) * h, 0);
  return grid;
}

}  // namespace

TEST_CASE("euclid") {
  CHECK(euclid({0, 0}, {0, 0}) == 0.0);
  CHECK(euclid({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(euclid({2, 1}, {5, 5}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(euclid({0, 0}, {3, 4}, 0.5) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("score applies the near/far weight switch and offset") {
  SearchConfig cfg;
  cfg.w_far = 2.0;
  cfg.w_near = 0.8;
  cfg.near_threshold = 5.0;
  cfg.offset_p = 0.001;
  // at the goal: f = g regardless of weights
  CHECK(score({7, 7}, {7, 7}, 3.25, cfg) == doctest::Approx(3.25));
  // h = 10 >= threshold: f = 2 + 2.001 * 10
  CHECK(score({0, 0}, {10, 0}, 2.0, cfg) == doctest::Approx(22.01).epsilon(1e-12));
  // h = 4 < threshold: f = 2 + 0.801 * 4
  CHECK(score({0, 0}, {4, 0}, 2.0, cfg) == doctest::Approx(5.204).epsilon(1e-12));
}

TEST_CASE("OpenList pops the minimum f") {
  OpenList open;
  for (double f : {3.0, 1.0, 2.0}) {
    SearchNode n;
    n.f = f;
    open.push(n);
  }
  CHECK(open.pop_min().f == 1.0);
  CHECK(open.pop_min().f == 2.0);
  CHECK(open.pop_min().f == 3.0);
  CHECK_THROWS_AS(open.pop_min(), EmptyError);
}

TEST_CASE("OpenList breaks f ties FIFO") {
  OpenList open;
  SearchNode a;
  a.f = 5.0;
  a.cell = {1, 0};
  SearchNode b;
  b.f = 5.0;
  b.cell = {2, 0};
  open.push(a);
  open.push(b);
  CHECK(open.pop_min().cell == Cell{1, 0});
  CHECK(open.pop_min().cell == Cell{2, 0});
}

TEST_CASE("OpenList matches a linear-scan oracle on random sequences") {
  std::mt19937 rng(testutil::rng_seed());
  std::uniform_real_distribution<double> fdist(0.0, 100.0);
  std::bernoulli_distribution do_pop(0.4);
  OpenList heap;
  LinearOpenList linear;
  for (int i = 0; i < 5000; ++i) {
    if (do_pop(rng) && !heap.empty()) {
      const SearchNode a = heap.pop_min();
      const SearchNode b = linear.pop_min();
      CHECK(a.f == b.f);
      CHECK(a.seq == b.seq);
    } else {
      SearchNode n;
      n.f = fdist(rng);
      heap.push(n);
      linear.push(n);
    }
  }
  while (!heap.empty()) {
    CHECK(heap.pop_min().seq == linear.pop_min().seq);
  }
}

TEST_CASE("reconstruct splices the two chains") {
  ParentMap p1(5, 1), p2(5, 1);
  const Cell s{0, 0}, a{1, 0}, m{2, 0}, b{3, 0}, g{4, 0};
  p1.set(s, s);
  p1.set(a, s);
  p1.set(m, a);
  p2.set(g, g);
  p2.set(b, g);
  p2.set(m, b);
  const Path path = reconstruct(m, p1, p2);
  CHECK(path == Path{s, a, m, b, g});

  ParentMap root_only(3, 1);
  root_only.set({1, 0}, {1, 0});
  CHECK(reconstruct({1, 0}, root_only, ParentMap{}) == Path{Cell{1, 0}});
}

TEST_CASE("reconstruct flags broken chains") {
  ParentMap p1(4, 1);
  p1.set({2, 0}, {1, 0});  // parent (1,0) itself has no entry
  CHECK_THROWS_AS(reconstruct({2, 0}, p1, ParentMap{}), InternalError);
  CHECK_THROWS_AS(reconstruct({3, 0}, p1, ParentMap{}), InternalError);
}

TEST_CASE("plan on an empty grid finds the diagonal") {
  auto grid = empty_grid(5, 5);
  for (SearchMode mode : {SearchMode::kBaseline,
                          SearchMode::kImprovedUnidirectional,
                          SearchMode::kImprovedBidirectional}) {
    auto matrix = point_matrix(grid);
    const PlanResult result =
        plan(grid, matrix, {0, 0}, {4, 4}, unweighted(mode));
    CHECK(result.reached_goal);
    CHECK(result.path.front() == Cell{0, 0});
    CHECK(result.path.back() == Cell{4, 4});
    CHECK(path_cost(result.path) ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("plan start == goal") {
  auto grid = empty_grid(4, 4);
  auto matrix = point_matrix(grid);
  const auto result = plan(grid, matrix, {2, 2}, {2, 2},
                           unweighted(SearchMode::kImprovedBidirectional));
  CHECK(result.reached_goal);
  CHECK(result.path == Path{Cell{2, 2}});
}

TEST_CASE("plan input validation") {
  auto grid = empty_grid(4, 4);
  grid.cells[0] = 1;
  auto matrix = point_matrix(grid);
  SearchConfig cfg = unweighted(SearchMode::kImprovedBidirectional);
  CHECK_THROWS_AS(plan(grid, matrix, {-1, 0}, {2, 2}, cfg), BoundsError);
  CHECK_THROWS_AS(plan(grid, matrix, {1, 1}, {9, 0}, cfg), BoundsError);
  CHECK_THROWS_AS(plan(grid, matrix, {0, 0}, {2, 2}, cfg), StartBlockedError);
}

TEST_CASE("baseline throws PathNotFound when walled off") {
  auto grid = empty_grid(5, 5);
  for (int r = 0; r < 5; ++r) grid.cells[r * 5 + 2] = 1;  // full wall
  auto matrix = point_matrix(grid);
  CHECK_THROWS_AS(
      plan(grid, matrix, {0, 2}, {4, 2}, unweighted(SearchMode::kBaseline)),
      PathNotFoundError);
}

TEST_CASE("improved modes fall back to the nearest explored cell") {
  auto grid = empty_grid(7, 7);
  for (int r = 0; r < 7; ++r) grid.cells[r * 7 + 3] = 1;  // wall at col 3
  for (SearchMode mode : {SearchMode::kImprovedUnidirectional,
                          SearchMode::kImprovedBidirectional}) {
    auto matrix = point_matrix(grid);
    const auto result = plan(grid, matrix, {0, 3}, {6, 3}, unweighted(mode));
    CHECK_FALSE(result.reached_goal);
    CHECK(!result.path.empty());
    CHECK(result.path.front() == Cell{0, 3});
    // fallback dominance: no expanded cell is strictly closer to the goal
    const double terminal_d = euclid(result.path.back(), {6, 3});
    for (const Cell& c : result.stats.expanded) {
      CHECK(euclid(c, {6, 3}) >= terminal_d - 1e-12);
    }
    CHECK(result.path.back() == Cell{2, 3});
  }
}

TEST_CASE("goal inside an obstacle engages the fallback, not an error") {
  auto grid = empty_grid(6, 6);
  grid.cells[3 * 6 + 4] = 1;  // (4,3) occupied
  auto matrix = point_matrix(grid);
  const auto result = plan(grid, matrix, {0, 3}, {4, 3},
                           unweighted(SearchMode::kImprovedBidirectional));
  CHECK_FALSE(result.reached_goal);
  CHECK(euclid(result.path.back(), {4, 3}) == doctest::Approx(1.0));
}

TEST_CASE("w=1 unidirectional equals Dijkstra on random grids") {
  std::mt19937 rng(testutil::rng_seed() + 10);
  std::uniform_int_distribution<int> size_dist(8, 50);
  int solved = 0;
  while (solved < 30) {
    const int w = size_dist(rng), h = size_dist(rng);
    auto grid = testutil::random_grid(rng, w, h, 0.25);
    const Cell start{0, 0}, goal{w - 1, h - 1};
    grid.cells[0] = 0;
    grid.cells[grid.cells.size() - 1] = 0;
    auto legal = [&](Cell c) { return !grid.occupied(c.col, c.row); };
    const auto dist = testutil::dijkstra_costs(grid, start, legal);
    const double opt = dist[static_cast<std::size_t>(goal.row) * w + goal.col];
    if (!std::isfinite(opt)) continue;
    ++solved;

    auto matrix = point_matrix(grid);
    const auto result =
        plan(grid, matrix, start, goal, unweighted(SearchMode::kImprovedUnidirectional));
    REQUIRE(result.reached_goal);
    CHECK(path_cost(result.path) == doctest::Approx(opt).epsilon(1e-12));
    CHECK(testutil::valid_path(result.path, start, legal));
  }
}

TEST_CASE("weighted search cost stays within w x optimal") {
  std::mt19937 rng(testutil::rng_seed() + 11);
  for (double w_const : {1.5, 2.0}) {
    int solved = 0;
    while (solved < 20) {
      auto grid = testutil::random_grid(rng, 30, 30, 0.25);
      const Cell start{0, 0}, goal{29, 29};
      grid.cells[0] = 0;
      grid.cells[grid.cells.size() - 1] = 0;
      auto legal = [&](Cell c) { return !grid.occupied(c.col, c.row); };
      const auto dist = testutil::dijkstra_costs(grid, start, legal);
      const double opt = dist[29 * 30 + 29];
      if (!std::isfinite(opt)) continue;
      ++solved;

      SearchConfig cfg = unweighted(SearchMode::kImprovedUnidirectional);
      cfg.w_far = cfg.w_near = w_const;
      auto matrix = point_matrix(grid);
      const auto result = plan(grid, matrix, start, goal, cfg);
      REQUIRE(result.reached_goal);
      CHECK(path_cost(result.path) <= w_const * opt + 1e-9);
    }
  }
}

TEST_CASE("bidirectional search is sound on random grids with ego volume") {
  std::mt19937 rng(testutil::rng_seed() + 12);
  int checked = 0;
  while (checked < 15) {
    auto grid = testutil::random_grid(rng, 40, 40, 0.12);
    const Cell start{3, 3}, goal{36, 36};
    const int radius = 1;
    const auto eager = inflate_eager(grid, radius);  // legality oracle
    auto legal = [&](Cell c) { return eager.state(c.col, c.row) == 1; };
    if (!legal(start) || !legal(goal)) continue;
    const auto dist = testutil::dijkstra_costs(grid, start, legal);
    if (!std::isfinite(dist[36 * 40 + 36])) continue;
    ++checked;

    SearchConfig cfg;  // defaults: weighted, bidirectional
    cfg.mode = SearchMode::kImprovedBidirectional;
    TraversabilityMatrix matrix(40, 40, radius);
    const auto result = plan(grid, matrix, start, goal, cfg);
    CHECK(result.reached_goal);
    CHECK(result.path.back() == goal);
    CHECK(testutil::valid_path(result.path, start, legal));
  }
}

TEST_CASE("heap and linear open lists expand identically") {
  std::mt19937 rng(testutil::rng_seed() + 13);
  for (int trial = 0; trial < 10; ++trial) {
    auto grid = testutil::random_grid(rng, 25, 25, 0.2);
    grid.cells[0] = 0;
    grid.cells[grid.cells.size() - 1] = 0;
    SearchConfig cfg;
    cfg.mode = SearchMode::kImprovedUnidirectional;
    auto m1 = point_matrix(grid);
    auto m2 = point_matrix(grid);
    cfg.use_linear_open_list = false;
    PlanResult heap_result;
    try {
      heap_result = plan(grid, m1, {0, 0}, {24, 24}, cfg);
    } catch (const StartBlockedError&) {
      continue;
    }
    cfg.use_linear_open_list = true;
    const PlanResult linear_result = plan(grid, m2, {0, 0}, {24, 24}, cfg);
    CHECK(heap_result.stats.expanded == linear_result.stats.expanded);
    CHECK(heap_result.path == linear_result.path);
  }
}

TEST_CASE("tie-break offset p preserves the path when f values are distinct") {
  std::mt19937 rng(testutil::rng_seed() + 14);
  int verified = 0;
  int attempts = 0;
  while (verified < 8 && attempts < 200) {
    ++attempts;
    auto grid = testutil::random_grid(rng, 15, 15, 0.2);
    grid.cells[0] = 0;
    grid.cells[grid.cells.size() - 1] = 0;
    SearchConfig cfg;
    cfg.mode = SearchMode::kImprovedUnidirectional;
    cfg.w_far = 2.0;
    cfg.w_near = 0.8;
    cfg.near_threshold = 5.0;
    cfg.offset_p = 0.0;

    auto m1 = point_matrix(grid);
    PlanResult base;
    try {
      base = plan(grid, m1, {0, 0}, {14, 14}, cfg);
    } catch (const StartBlockedError&) {
      continue;
    }
    if (!base.reached_goal) continue;

    // Smallest gap between distinct f values ever seen decides a provably
    // order-preserving p for this instance.
    std::vector<double> fs;
    for (const Cell& c : base.stats.expanded) {
      fs.push_back(score(c, {14, 14}, 0.0, cfg));
    }
    std::sort(fs.begin(), fs.end());
    double min_gap = 1e9;
    for (std::size_t i = 1; i < fs.size(); ++i) {
      const double gap = fs[i] - fs[i - 1];
      if (gap > 1e-9) min_gap = std::min(min_gap, gap);
    }
    if (min_gap > 1e8) continue;
    const double h_max = euclid({0, 0}, {14, 14});
    const double p = std::min(0.001, min_gap / (4.0 * h_max));
    if (p <= 0.0) continue;

    cfg.offset_p = p;
    auto m2 = point_matrix(grid);
    const PlanResult offset = plan(grid, m2, {0, 0}, {14, 14}, cfg);
    CHECK(offset.path == base.path);
    ++verified;
  }
  CHECK(verified >= 5);
}

TEST_CASE("plan on the bundled lot map") {
  const auto grid = load_pgm_file(testutil::data_path("maps/lot200.pgm"), 128);
  VehicleParams car;
  const int radius = bounding_radius_cells(car, 1.0, 0.25);

  SearchConfig cfg;
  cfg.mode = SearchMode::kImprovedBidirectional;
  TraversabilityMatrix matrix(grid.width, grid.height, radius);
  const auto vertical = plan(grid, matrix, {95, 85}, {109, 133}, cfg);
  CHECK(vertical.reached_goal);
  auto legal = [&](Cell c) { return traversable(grid, matrix, c); };
  CHECK(testutil::valid_path(vertical.path, {95, 85}, legal));

  // goal inside an obstacle: fallback path, no exception
  TraversabilityMatrix matrix2(grid.width, grid.height, radius);
  const auto unreachable = plan(grid, matrix2, {95, 85}, {109, 117}, cfg);
  CHECK_FALSE(unreachable.reached_goal);
  CHECK(!unreachable.path.empty());
  const double terminal_d = euclid(unreachable.path.back(), {109, 117});
  for (const Cell& c : unreachable.stats.expanded) {
    CHECK(euclid(c, {109, 117}) >= terminal_d - 1e-12);
  }
}
