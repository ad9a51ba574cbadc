#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parkplan/bench.hpp"
#include "parkplan/errors.hpp"
#include "parkplan/io.hpp"
#include "parkplan/svg.hpp"

namespace pp = parkplan;

namespace {

pp::Cell parse_cell_arg(const std::string& arg) {
  const auto comma = arg.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("expected COL,ROW: " + arg);
  }
  return {std::stoi(arg.substr(0, comma)), std::stoi(arg.substr(comma + 1))};
}

int cmd_plan(const std::string& map_path, const std::string& start_arg,
             const std::string& goal_arg, const std::string& mode,
             pp::SearchConfig cfg, int occupied_threshold, double resolution,
             double margin, const std::string& out_csv,
             const std::string& out_svg) {
  const pp::OccupancyGrid grid =
      pp::load_pgm_file(map_path, occupied_threshold, resolution);
  const pp::Cell start = parse_cell_arg(start_arg);
  const pp::Cell goal = parse_cell_arg(goal_arg);

  if (mode == "baseline") {
    cfg.mode = pp::SearchMode::kBaseline;
  } else if (mode == "improved") {
    cfg.mode = pp::SearchMode::kImprovedBidirectional;
  } else if (mode == "improved-unidirectional") {
    cfg.mode = pp::SearchMode::kImprovedUnidirectional;
  } else {
    throw CLI::ValidationError("unknown mode: " + mode);
  }

  pp::VehicleParams vehicle;
  const int radius = cfg.mode == pp::SearchMode::kBaseline
                         ? 0
                         : pp::bounding_radius_cells(vehicle, resolution, margin);
  pp::TraversabilityMatrix matrix(grid.width, grid.height, radius);
  const pp::PlanResult result = pp::plan(grid, matrix, start, goal, cfg);

  std::printf("reached_goal=%d cells=%zu cost=%.3f expansions=%llu "
              "disc_scans=%llu search_ms=%.3f\n",
              result.reached_goal ? 1 : 0, result.path.size(),
              pp::path_cost(result.path, resolution),
              static_cast<unsigned long long>(result.stats.expansions),
              static_cast<unsigned long long>(result.stats.disc_scans),
              result.stats.search_ms);
  if (!out_csv.empty()) pp::write_path_csv(out_csv, result.path);
  if (!out_svg.empty()) {
    pp::SvgWriter svg(grid.width * resolution, grid.height * resolution);
    svg.add_grid(grid);
    pp::SmoothPath line;
    for (const pp::Cell& c : result.path) {
      line.push_back(pp::cell_center(c, resolution));
    }
    svg.add_polyline(line, "#2040d0", 0.4);
    svg.add_circle(pp::cell_center(start, resolution), 1.2, "#20a040");
    svg.add_circle(pp::cell_center(goal, resolution), 1.2, "#d03030");
    svg.save(out_svg);
  }
  return 0;
}

std::vector<pp::Scenario> load_suite(const std::string& dir,
                                     const std::vector<std::string>& names) {
  std::vector<pp::Scenario> out;
  for (const std::string& name : names) {
    out.push_back(pp::load_scenario(dir + "/" + name + ".json"));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parkplan: grid navigation + parking trajectory toolkit"};
  app.require_subcommand(1);

  // plan -----------------------------------------------------------------
  auto* plan_cmd = app.add_subcommand("plan", "grid path search");
  std::string map_path, start_arg, goal_arg, out_csv, out_svg;
  std::string mode = "improved";
  pp::SearchConfig search_cfg;
  int occupied_threshold = 128;
  double resolution = 1.0;
  double margin = 0.25;
  plan_cmd->add_option("--map", map_path, "PGM map path")->required();
  plan_cmd->add_option("--start", start_arg, "start cell COL,ROW")->required();
  plan_cmd->add_option("--goal", goal_arg, "goal cell COL,ROW")->required();
  plan_cmd->add_option("--mode", mode, "baseline|improved|improved-unidirectional");
  plan_cmd->add_option("--w-far", search_cfg.w_far, "far heuristic weight");
  plan_cmd->add_option("--w-near", search_cfg.w_near, "near heuristic weight");
  plan_cmd->add_option("--threshold", search_cfg.near_threshold,
                       "near/far switch distance, meters");
  plan_cmd->add_option("--offset-p", search_cfg.offset_p, "tie-break offset");
  plan_cmd->add_option("--occupied-threshold", occupied_threshold,
                       "gray level below which a cell is occupied");
  plan_cmd->add_option("--resolution", resolution, "meters per cell");
  plan_cmd->add_option("--margin", margin, "inflation safety margin, meters");
  plan_cmd->add_option("--out", out_csv, "write path CSV");
  plan_cmd->add_option("--svg", out_svg, "write SVG overlay");

  // smooth ---------------------------------------------------------------
  auto* smooth_cmd = app.add_subcommand("smooth", "B-spline path smoothing");
  std::string smooth_in, smooth_out, smooth_svg;
  pp::SplineConfig spline_cfg;
  double smooth_res = 1.0;
  smooth_cmd->add_option("--in", smooth_in, "path CSV (col,row)")->required();
  smooth_cmd->add_option("--degree", spline_cfg.degree, "spline degree");
  smooth_cmd->add_option("--stride", spline_cfg.sample_stride,
                         "control point stride");
  smooth_cmd->add_option("--samples", spline_cfg.output_samples,
                         "output sample count (0 = 10x controls)");
  smooth_cmd->add_option("--resolution", smooth_res, "meters per cell");
  smooth_cmd->add_option("--out", smooth_out, "write smoothed CSV");
  smooth_cmd->add_option("--svg", smooth_svg, "write SVG overlay");

  // park -----------------------------------------------------------------
  auto* park_cmd = app.add_subcommand("park", "optimize a parking trajectory");
  std::string park_scenario, park_out, park_svg;
  park_cmd->add_option("--scenario", park_scenario, "scenario JSON")->required();
  park_cmd->add_option("--out", park_out, "write trajectory CSV");
  park_cmd->add_option("--svg", park_svg, "write SVG overlay");

  // track ----------------------------------------------------------------
  auto* track_cmd = app.add_subcommand("track", "closed-loop path tracking");
  std::string track_in, track_out, track_scenario;
  pp::TrackerConfig tracker_cfg;
  track_cmd->add_option("--path", track_in, "reference CSV (x,y)")->required();
  track_cmd->add_option("--scenario", track_scenario,
                        "scenario JSON for vehicle parameters");
  track_cmd->add_option("--out", track_out, "write drive log CSV");
  track_cmd->add_option("--dt", tracker_cfg.dt, "controller period, seconds");

  // bench ----------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "benchmark suites");
  std::string suite = "timing";
  std::string scenario_dir = "data/scenarios";
  std::string out_dir = "bench_out";
  bench_cmd->add_option("--suite", suite, "timing|danger|comfort")->required();
  bench_cmd->add_option("--scenarios", scenario_dir, "scenario JSON directory");
  bench_cmd->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) {
      return cmd_plan(map_path, start_arg, goal_arg, mode, search_cfg,
                      occupied_threshold, resolution, margin, out_csv, out_svg);
    }

    if (*smooth_cmd) {
      const pp::Path path = pp::read_path_csv(smooth_in);
      const pp::SmoothPath smoothed =
          pp::smooth_path(path, spline_cfg, smooth_res);
      std::printf("input_cells=%zu output_points=%zu\n", path.size(),
                  smoothed.size());
      if (!smooth_out.empty()) pp::write_smooth_csv(smooth_out, smoothed);
      if (!smooth_svg.empty()) {
        double w = 1.0, h = 1.0;
        for (const pp::Vec2& p : smoothed) {
          w = std::max(w, p.x + 2.0);
          h = std::max(h, p.y + 2.0);
        }
        pp::SvgWriter svg(w, h, 8.0);
        pp::SmoothPath raw;
        for (const pp::Cell& c : path) raw.push_back(pp::cell_center(c, smooth_res));
        svg.add_polyline(raw, "#888888", 0.15);
        svg.add_polyline(smoothed, "#2040d0", 0.2);
        svg.save(smooth_svg);
      }
      return 0;
    }

    if (*park_cmd) {
      const pp::Scenario scn = pp::load_scenario(park_scenario);
      pp::BenchConfig cfg;
      const pp::DangerOutcome outcome = pp::run_danger_scenario(scn, cfg);
      std::printf("scenario=%s geometric_pass=%d optimizer_pass=%d\n",
                  scn.id.c_str(), outcome.row.geometric_pass ? 1 : 0,
                  outcome.row.optimizer_pass ? 1 : 0);
      if (outcome.optimized) {
        const auto& rep = outcome.optimized->report;
        std::printf("outer=%d inner=%d violation=%.2e objective=%.4f\n",
                    rep.outer_iterations, rep.inner_iterations,
                    rep.max_violation, rep.objective);
        if (!park_out.empty()) {
          pp::write_trajectory_csv(park_out, outcome.optimized->states,
                                   outcome.optimized->controls);
        }
      }
      if (!park_svg.empty()) pp::emit_parking_svg(scn, outcome, park_svg);
      return outcome.row.optimizer_pass ? 0 : 1;
    }

    if (*track_cmd) {
      pp::VehicleParams vehicle;
      if (!track_scenario.empty()) {
        vehicle = pp::load_scenario(track_scenario).vehicle;
      }
      const pp::SmoothPath reference = pp::read_smooth_csv(track_in);
      const pp::DriveLog log = pp::track(reference, vehicle, tracker_cfg);
      const pp::ComfortMetrics metrics = pp::comfort_metrics(log);
      std::printf("steps=%zu duration=%.2fs avg|a|=%.3f avg|delta|=%.2fdeg "
                  "length=%.2fm\n",
                  log.entries.size(), metrics.duration, metrics.avg_abs_accel,
                  metrics.avg_abs_steer_deg, metrics.path_length);
      if (!track_out.empty()) pp::write_log_csv(track_out, log);
      return 0;
    }

    if (*bench_cmd) {
      std::filesystem::create_directories(out_dir);
      pp::BenchConfig cfg;
      if (suite == "timing" || suite == "comfort") {
        const auto scns = load_suite(
            scenario_dir, {"vertical", "parallel", "unreachable"});
        cfg.with_tracking = suite == "comfort";
        std::vector<pp::ScenarioRun> rows;
        for (const auto& scn : scns) {
          for (pp::Algo algo : {pp::Algo::kBaseline, pp::Algo::kImproved}) {
            rows.push_back(pp::run_scenario(scn, algo, cfg));
            const auto& r = rows.back();
            std::printf("%-12s %-9s load=%8.3fms plan=%8.3fms avg|a|=%.3f "
                        "avg|d|=%.2f %s\n",
                        r.scenario_id.c_str(), pp::algo_name(r.algo),
                        r.timings.map_load_ms, r.timings.planning_ms,
                        r.metrics.avg_abs_accel, r.metrics.avg_abs_steer_deg,
                        r.error.c_str());
          }
          pp::emit_scenario_svg(scn, {rows.end()[-2], rows.end()[-1]},
                                out_dir + "/" + scn.id + ".svg");
        }
        pp::emit_timing_report(rows, out_dir + "/" + suite + ".csv");
      } else if (suite == "danger") {
        const auto scns = load_suite(scenario_dir,
                                     {"danger_a", "danger_b", "danger_c",
                                      "danger_d", "danger_e", "danger_f"});
        std::vector<pp::DangerRow> rows;
        for (const auto& scn : scns) {
          const pp::DangerOutcome outcome = pp::run_danger_scenario(scn, cfg);
          rows.push_back(outcome.row);
          std::printf("%-10s geometric=%d optimizer=%d\n", scn.id.c_str(),
                      outcome.row.geometric_pass ? 1 : 0,
                      outcome.row.optimizer_pass ? 1 : 0);
          pp::emit_parking_svg(scn, outcome, out_dir + "/" + scn.id + ".svg");
        }
        pp::emit_danger_report(rows, out_dir + "/danger.csv");
      } else {
        throw CLI::ValidationError("unknown suite: " + suite);
      }
      return 0;
    }
  } catch (const pp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
