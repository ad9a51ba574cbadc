#pragma once

#include <optional>
#include <vector>

#include "parkplan/geometry.hpp"
#include "parkplan/vehicle.hpp"

namespace parkplan {

struct Trajectory {
  std::vector<VehicleState> states;
  std::vector<ControlCommand> controls;  // one fewer than states
  double t_s = 0.25;
};

/// Tangent arc-(line)-arc connection between two poses using turning
/// circles of radius R, resampled uniformly by arc length into N+1 states
/// and N controls. Speed is arc-length/t_s per interval; steering is
/// atan(L/R) on arcs with the turn's sign, 0 on the line. With
/// reverse=true the vehicle backs along the same geometry (v < 0).
/// No collision checking is performed.
Trajectory arc_line_guess(const Pose& start_pose, const Pose& goal_pose,
                          double R, int N, double t_s,
                          const VehicleParams& params, bool reverse = false);

struct GuessValidation {
  bool collision_free = true;
  std::optional<int> first_violation;  // knot index of the offending interval
};

/// Footprint-vs-obstacle sweep over every knot plus 4 interpolated states
/// per interval.
GuessValidation validate_guess(const Trajectory& traj,
                               const std::vector<Polygon>& obstacles,
                               const VehicleParams& params);

/// Linear state interpolation (positions lerp, heading via shortest arc).
VehicleState interpolate_state(const VehicleState& a, const VehicleState& b,
                               double alpha);

double trajectory_length(const Trajectory& traj);

}  // namespace parkplan
