#include "parkplan/scenario.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "parkplan/errors.hpp"

namespace parkplan {

namespace {

using nlohmann::json;

Pose parse_pose(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("scenario: pose must be [x, y, psi]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Cell parse_cell(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("scenario: cell must be [col, row]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

Scenario load_scenario(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open scenario file: " + json_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
  }

  Scenario scn;
  scn.id = j.value("id", std::string("scenario"));
  scn.kind = j.value("kind", std::string("vertical"));
  scn.resolution = j.value("resolution", 1.0);
  scn.occupied_threshold = j.value("occupied_threshold", 128);

  if (j.contains("map")) {
    const std::filesystem::path base =
        std::filesystem::path(json_path).parent_path();
    scn.map_path = (base / j["map"].get<std::string>()).string();
  }
  if (j.contains("start")) scn.start = parse_cell(j["start"]);
  if (j.contains("goal")) scn.goal = parse_cell(j["goal"]);
  if (j.contains("spot_pose")) scn.spot_pose = parse_pose(j["spot_pose"]);
  if (j.contains("park_start_pose")) {
    scn.park_start_pose = parse_pose(j["park_start_pose"]);
  }
  scn.reverse_park = j.value("reverse_park", true);
  scn.guess_radius = j.value("guess_radius", 0.0);

  if (j.contains("obstacles")) {
    for (const auto& jo : j["obstacles"]) {
      Polygon poly;
      for (const auto& jv : jo) {
        if (!jv.is_array() || jv.size() != 2) {
          throw ParseError("scenario: obstacle vertex must be [x, y]");
        }
        poly.push_back({jv[0].get<double>(), jv[1].get<double>()});
      }
      scn.obstacles.push_back(std::move(poly));
    }
  }

  if (j.contains("vehicle")) {
    const auto& jv = j["vehicle"];
    scn.vehicle.wheelbase = jv.value("wheelbase", scn.vehicle.wheelbase);
    scn.vehicle.length = jv.value("length", scn.vehicle.length);
    scn.vehicle.width = jv.value("width", scn.vehicle.width);
    scn.vehicle.rear_overhang =
        jv.value("rear_overhang", scn.vehicle.length / 4.0);
    scn.vehicle.a_max = jv.value("a_max", scn.vehicle.a_max);
    scn.vehicle.delta_max = jv.value("delta_max", scn.vehicle.delta_max);
    scn.vehicle.v_max = jv.value("v_max", scn.vehicle.v_max);
  }

  if (j.contains("horizon")) {
    const auto& jh = j["horizon"];
    scn.horizon = jh.value("N", scn.horizon);
    scn.t_s = jh.value("t_s", scn.t_s);
  }

  if (j.contains("weights")) {
    const auto& jw = j["weights"];
    scn.weights.w1 = jw.value("w1", scn.weights.w1);
    scn.weights.w2 = jw.value("w2", scn.weights.w2);
    scn.weights.w3 = jw.value("w3", scn.weights.w3);
    scn.weights.w4 = jw.value("w4", scn.weights.w4);
    scn.weights.kappa = jw.value("kappa", scn.weights.kappa);
  }

  if (j.contains("bounds")) {
    const auto& jb = j["bounds"];
    if (!jb.is_array() || jb.size() != 4) {
      throw ParseError("scenario: bounds must be [x_min, y_min, x_max, y_max]");
    }
    scn.bounds.x_min = jb[0].get<double>();
    scn.bounds.y_min = jb[1].get<double>();
    scn.bounds.x_max = jb[2].get<double>();
    scn.bounds.y_max = jb[3].get<double>();
    scn.has_bounds = true;
  }
  return scn;
}

ParkingProblem parking_problem_from(const Scenario& scn) {
  ParkingProblem problem;
  problem.x_start = {scn.park_start_pose.x, scn.park_start_pose.y, 0.0,
                     normalize_angle(scn.park_start_pose.psi)};
  problem.x_final = {scn.spot_pose.x, scn.spot_pose.y, 0.0,
                     normalize_angle(scn.spot_pose.psi)};
  problem.horizon = scn.horizon;
  problem.t_s = scn.t_s;
  problem.vehicle = scn.vehicle;
  problem.weights = scn.weights;
  if (scn.has_bounds) problem.bounds = scn.bounds;
  for (const Polygon& poly : scn.obstacles) {
    problem.obstacles.push_back(polytope_from_vertices(poly));
  }
  return problem;
}

}  // namespace parkplan
