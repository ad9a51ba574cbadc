#pragma once

#include <vector>

#include "parkplan/errors.hpp"
#include "parkplan/geometry.hpp"
#include "parkplan/vehicle.hpp"

namespace parkplan {

struct LogEntry {
  double t = 0.0;
  VehicleState state;  // state the control below was applied from
  ControlCommand u;
};

struct DriveLog {
  std::vector<LogEntry> entries;
  double dt = 0.1;
};

struct ComfortMetrics {
  double avg_abs_accel = 0.0;      // m/s^2
  double avg_abs_steer_deg = 0.0;  // degrees
  double duration = 0.0;           // seconds
  double path_length = 0.0;        // meters
};

/// Short-horizon penalty controller: every step enumerates a fixed
/// accel x steer grid, rolls each pair out H steps through the bicycle
/// model, scores the five penalty classes (accel, steer, control rate,
/// position error, terminal pose error) and applies the winner's first
/// control. Deterministic by construction.
struct TrackerConfig {
  double dt = 0.1;
  int horizon = 8;
  int accel_samples = 5;
  int steer_samples = 7;
  double w_accel = 1.0;
  double w_steer = 1.0;
  double w_rate = 0.5;
  double w_pos = 8.0;
  double w_terminal = 2.0;
  double goal_pos_tol = 0.15;
  double goal_speed_tol = 0.3;
  double max_time = 120.0;
  double max_cross_track = 5.0;
};

/// Divergence from the reference; carries the log up to the failure.
struct TrackingDiverged : TrackingFailure {
  DriveLog partial_log;
  explicit TrackingDiverged(DriveLog log)
      : TrackingFailure("tracking diverged from reference"),
        partial_log(std::move(log)) {}
};

/// Closed-loop rollout along a polyline reference. The vehicle starts at
/// the reference head, oriented along the first segment, at rest.
DriveLog track(const std::vector<Vec2>& reference, const VehicleParams& params,
               const TrackerConfig& cfg);

ComfortMetrics comfort_metrics(const DriveLog& log);

}  // namespace parkplan
