#include "parkplan/bench.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "parkplan/errors.hpp"
#include "parkplan/io.hpp"
#include "parkplan/svg.hpp"

namespace parkplan {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

SmoothPath cells_to_meters(const Path& path, double resolution) {
  SmoothPath out;
  out.reserve(path.size());
  for (const Cell& c : path) out.push_back(cell_center(c, resolution));
  return out;
}

}  // namespace

const char* algo_name(Algo algo) {
  return algo == Algo::kBaseline ? "baseline" : "improved";
}

ScenarioRun run_scenario(const Scenario& scn, Algo algo,
                         const BenchConfig& cfg) {
  ScenarioRun run;
  run.scenario_id = scn.id;
  run.algo = algo;

  const auto t_total = clock_type::now();

  // Phase 1: initialization (map read, model construction).
  auto t0 = clock_type::now();
  const OccupancyGrid grid =
      load_pgm_file(scn.map_path, scn.occupied_threshold, scn.resolution);
  const VehicleParams vehicle = scn.vehicle;
  const int radius =
      bounding_radius_cells(vehicle, scn.resolution, cfg.inflate_margin);
  run.timings.init_ms = ms_since(t0);

  // Phase 2: obstacle map establishment. The baseline resolves the whole
  // map eagerly; the improved planner only allocates the lazy matrix.
  t0 = clock_type::now();
  TraversabilityMatrix matrix =
      algo == Algo::kBaseline
          ? inflate_eager(grid, radius)
          : TraversabilityMatrix(grid.width, grid.height, radius);
  run.timings.map_load_ms = ms_since(t0);

  // Phases 3-4: search + backtracking.
  SearchConfig search_cfg = cfg.search;
  search_cfg.mode = algo == Algo::kBaseline
                        ? SearchMode::kBaseline
                        : SearchMode::kImprovedBidirectional;
  t0 = clock_type::now();
  try {
    run.plan = plan(grid, matrix, scn.start, scn.goal, search_cfg);
    run.timings.planning_ms = run.plan.stats.search_ms;
    run.timings.path_generation_ms = run.plan.stats.reconstruct_ms;
  } catch (const Error& e) {
    run.timings.planning_ms = ms_since(t0);
    run.error = e.what();
    run.timings.total_ms = ms_since(t_total);
    return run;
  }

  // Phase 5: interpolation (improved only).
  if (algo == Algo::kImproved && run.plan.path.size() >= 2) {
    t0 = clock_type::now();
    run.reference = smooth_path_safe(run.plan.path, cfg.spline, grid, matrix);
    run.timings.interpolation_ms = ms_since(t0);
  } else {
    run.reference = cells_to_meters(run.plan.path, scn.resolution);
  }
  run.timings.total_ms = ms_since(t_total);

  if (cfg.with_tracking && run.reference.size() >= 2) {
    try {
      const DriveLog log = track(run.reference, vehicle, cfg.tracker);
      run.metrics = comfort_metrics(log);
      run.tracking_ok = true;
    } catch (const TrackingDiverged& e) {
      if (!e.partial_log.entries.empty()) {
        run.metrics = comfort_metrics(e.partial_log);
      }
      run.tracking_ok = false;
    }
  }
  return run;
}

DangerOutcome run_danger_scenario(const Scenario& scn, const BenchConfig& cfg) {
  DangerOutcome outcome;
  outcome.row.scenario = scn.id;

  const ParkingProblem problem = parking_problem_from(scn);
  const double r_min = min_turn_radius(scn.vehicle);
  double radius = scn.guess_radius > 0.0 ? scn.guess_radius : 2.0 * r_min;
  radius = std::max(radius, r_min);

  // Retry with tighter circles until the tangent construction succeeds.
  std::optional<Trajectory> guess;
  for (double r = radius; r >= r_min - 1e-9; r *= 0.85) {
    try {
      guess = arc_line_guess(scn.park_start_pose, scn.spot_pose, r,
                             scn.horizon, scn.t_s, scn.vehicle,
                             scn.reverse_park);
      break;
    } catch (const GeometryError&) {
      if (r * 0.85 < r_min - 1e-9 && std::abs(r - r_min) > 1e-9) continue;
    }
  }
  if (!guess) {
    try {
      guess = arc_line_guess(scn.park_start_pose, scn.spot_pose, r_min,
                             scn.horizon, scn.t_s, scn.vehicle,
                             scn.reverse_park);
    } catch (const GeometryError&) {
      return outcome;  // both methods fail this scenario
    }
  }
  outcome.guess = *guess;

  const GuessValidation validation =
      validate_guess(*guess, scn.obstacles, scn.vehicle);
  outcome.row.geometric_pass = validation.collision_free;

  try {
    OptimizedTrajectory traj = solve_parking(problem, *guess, cfg.solver);
    outcome.verify = verify_trajectory(traj, problem);
    outcome.row.optimizer_pass =
        outcome.verify.collision_free &&
        outcome.verify.max_dynamics_defect <= 1e-3 &&
        outcome.verify.terminal_position_error <= cfg.terminal_pos_tol &&
        outcome.verify.terminal_heading_error <= cfg.terminal_psi_tol &&
        outcome.verify.bounds_ok;
    outcome.optimized = std::move(traj);
  } catch (const Infeasible& e) {
    outcome.optimized = e.best;
    outcome.verify = verify_trajectory(e.best, problem);
    outcome.row.optimizer_pass = false;
  }
  return outcome;
}

std::vector<DangerRow> run_danger_suite(const std::vector<Scenario>& scns,
                                        const BenchConfig& cfg) {
  std::vector<DangerRow> rows;
  rows.reserve(scns.size());
  for (const Scenario& scn : scns) {
    rows.push_back(run_danger_scenario(scn, cfg).row);
  }
  return rows;
}

void emit_timing_report(const std::vector<ScenarioRun>& rows,
                        const std::string& csv_path) {
  if (rows.empty()) throw DomainError("emit_timing_report: no rows");
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write report: " + csv_path);
  out << "scenario,algo,init_ms,map_load_ms,planning_ms,avg_abs_accel,"
         "avg_abs_steer_deg,path_generation_ms,interpolation_ms,total_ms,"
         "reached_goal,expansions,disc_scans,error\n";
  char buf[256];
  for (const ScenarioRun& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%s,%s,%.3f,%.3f,%.3f,%.4f,%.4f,%.3f,%.3f,%.3f,%d,%llu,%llu,",
                  r.scenario_id.c_str(), algo_name(r.algo), r.timings.init_ms,
                  r.timings.map_load_ms, r.timings.planning_ms,
                  r.metrics.avg_abs_accel, r.metrics.avg_abs_steer_deg,
                  r.timings.path_generation_ms, r.timings.interpolation_ms,
                  r.timings.total_ms, r.plan.reached_goal ? 1 : 0,
                  static_cast<unsigned long long>(r.plan.stats.expansions),
                  static_cast<unsigned long long>(r.plan.stats.disc_scans));
    out << buf << r.error << "\n";
  }
}

void emit_danger_report(const std::vector<DangerRow>& rows,
                        const std::string& csv_path) {
  if (rows.empty()) throw DomainError("emit_danger_report: no rows");
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write report: " + csv_path);
  out << "scenario,geometric_pass,optimizer_pass\n";
  for (const DangerRow& r : rows) {
    out << r.scenario << "," << (r.geometric_pass ? 1 : 0) << ","
        << (r.optimizer_pass ? 1 : 0) << "\n";
  }
}

std::vector<DangerRow> read_danger_report(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot read report: " + csv_path);
  std::vector<DangerRow> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    DangerRow row;
    std::string field;
    std::getline(ss, row.scenario, ',');
    std::getline(ss, field, ',');
    row.geometric_pass = field == "1";
    std::getline(ss, field, ',');
    row.optimizer_pass = field == "1";
    rows.push_back(row);
  }
  return rows;
}

void emit_scenario_svg(const Scenario& scn, const std::vector<ScenarioRun>& runs,
                       const std::string& svg_path) {
  const OccupancyGrid grid =
      load_pgm_file(scn.map_path, scn.occupied_threshold, scn.resolution);
  SvgWriter svg(grid.width * grid.resolution, grid.height * grid.resolution);
  svg.add_grid(grid);
  for (const Polygon& obs : scn.obstacles) {
    svg.add_polygon(obs, "#e87daa", "#a04070", 0.5);
  }
  for (const ScenarioRun& run : runs) {
    const bool base = run.algo == Algo::kBaseline;
    svg.add_polyline(cells_to_meters(run.plan.path, scn.resolution),
                     base ? "#15b2d4" : "#888888", 0.25);
    if (!base) svg.add_polyline(run.reference, "#2040d0", 0.3);
  }
  svg.add_circle(cell_center(scn.start, scn.resolution), 1.0, "#20a040");
  svg.add_circle(cell_center(scn.goal, scn.resolution), 1.0, "#d03030");
  svg.save(svg_path);
}

void emit_parking_svg(const Scenario& scn, const DangerOutcome& outcome,
                      const std::string& svg_path) {
  double w = 30.0, h = 30.0;
  for (const Polygon& obs : scn.obstacles) {
    for (const Vec2& v : obs) {
      w = std::max(w, v.x + 5.0);
      h = std::max(h, v.y + 5.0);
    }
  }
  SvgWriter svg(w, h, 12.0);
  for (const Polygon& obs : scn.obstacles) {
    svg.add_polygon(obs, "#e87daa", "#a04070", 0.5);
  }
  SmoothPath guess_line;
  for (const VehicleState& s : outcome.guess.states) guess_line.push_back({s.x, s.y});
  svg.add_polyline(guess_line, "#d03030", 0.12);
  if (outcome.optimized) {
    SmoothPath opt_line;
    for (const VehicleState& s : outcome.optimized->states) {
      opt_line.push_back({s.x, s.y});
    }
    svg.add_polyline(opt_line, "#20a040", 0.12);
    // Footprint snapshots along the optimized maneuver.
    const auto& states = outcome.optimized->states;
    const std::size_t stride = std::max<std::size_t>(1, states.size() / 8);
    for (std::size_t k = 0; k < states.size(); k += stride) {
      svg.add_polygon(footprint(states[k], scn.vehicle), "none", "#208040", 0.8);
    }
    svg.add_polygon(footprint(states.back(), scn.vehicle), "none", "#104020", 1.0);
  }
  svg.save(svg_path);
}

}  // namespace parkplan
