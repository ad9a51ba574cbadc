#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parkplan/scenario.hpp"
#include "parkplan/search.hpp"
#include "parkplan/simtrack.hpp"
#include "parkplan/smooth.hpp"

namespace parkplan {

struct PhaseTimings {
  double init_ms = 0.0;       // map read + model construction
  double map_load_ms = 0.0;   // obstacle map establishment
  double planning_ms = 0.0;   // heuristic search
  double path_generation_ms = 0.0;  // parent backtracking
  double interpolation_ms = 0.0;    // spline smoothing (improved only)
  double total_ms = 0.0;
};

enum class Algo { kBaseline, kImproved };

const char* algo_name(Algo algo);

struct BenchConfig {
  SearchConfig search;
  SplineConfig spline;
  TrackerConfig tracker;
  SolverConfig solver;
  double inflate_margin = 0.25;  // meters added to the bounding radius
  double terminal_pos_tol = 0.15;   // meters
  double terminal_psi_tol = 3.0 * M_PI / 180.0;
  bool with_tracking = true;
};

struct ScenarioRun {
  std::string scenario_id;
  Algo algo = Algo::kImproved;
  PhaseTimings timings;
  PlanResult plan;
  SmoothPath reference;  // polyline handed to the tracker, meters
  ComfortMetrics metrics;
  bool tracking_ok = false;
  std::string error;  // planner failure, e.g. the baseline's PathNotFound
};

/// Timed planning run with the §-style phase split, then closed-loop
/// tracking of the produced reference under the shared controller.
ScenarioRun run_scenario(const Scenario& scn, Algo algo, const BenchConfig& cfg);

struct DangerRow {
  std::string scenario;
  bool geometric_pass = false;
  bool optimizer_pass = false;
};

struct DangerOutcome {
  DangerRow row;
  Trajectory guess;
  std::optional<OptimizedTrajectory> optimized;
  VerifyReport verify;
};

/// Arc-line guess (retrying smaller radii down to the minimum turning
/// radius), geometric validation, optimization, independent verification.
DangerOutcome run_danger_scenario(const Scenario& scn, const BenchConfig& cfg);

std::vector<DangerRow> run_danger_suite(const std::vector<Scenario>& scns,
                                        const BenchConfig& cfg);

void emit_timing_report(const std::vector<ScenarioRun>& rows,
                        const std::string& csv_path);
void emit_danger_report(const std::vector<DangerRow>& rows,
                        const std::string& csv_path);
std::vector<DangerRow> read_danger_report(const std::string& csv_path);

void emit_scenario_svg(const Scenario& scn, const std::vector<ScenarioRun>& runs,
                       const std::string& svg_path);
void emit_parking_svg(const Scenario& scn, const DangerOutcome& outcome,
                      const std::string& svg_path);

}  // namespace parkplan
