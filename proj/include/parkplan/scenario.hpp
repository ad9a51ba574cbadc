#pragma once

#include <string>
#include <vector>

#include "parkplan/gridmap.hpp"
#include "parkplan/optimizer.hpp"

namespace parkplan {

/// One benchmark fixture, loaded from JSON. Poses are in meters in the
/// map frame (x right, y down, matching grid rows).
struct Scenario {
  std::string id;
  std::string map_path;  // resolved against the scenario file's directory
  double resolution = 1.0;
  int occupied_threshold = 128;
  Cell start;
  Cell goal;
  Pose spot_pose;
  Pose park_start_pose;
  bool reverse_park = true;
  double guess_radius = 0.0;  // 0 = start from 2x the minimum turn radius
  std::vector<Polygon> obstacles;
  VehicleParams vehicle;
  std::string kind;  // vertical | parallel | unreachable | danger
  int horizon = 40;
  double t_s = 0.25;
  ObjectiveWeights weights;
  PositionBounds bounds;
  bool has_bounds = false;
};

Scenario load_scenario(const std::string& json_path);

/// Parking problem for the maneuver from park_start_pose into spot_pose.
ParkingProblem parking_problem_from(const Scenario& scn);

}  // namespace parkplan
