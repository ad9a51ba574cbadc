#pragma once

#include "parkplan/geometry.hpp"

namespace parkplan {

/// z = [x, y, v, psi]; (x, y) is the rear-axle center.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double psi = 0.0;
};

/// u = [a, delta].
struct ControlCommand {
  double a = 0.0;
  double delta = 0.0;
};

struct VehicleParams {
  double wheelbase = 2.85;   // m
  double length = 4.5;       // m
  double width = 2.0;        // m
  double rear_overhang = 1.125;  // rear axle to rear edge, m (length/4)
  double a_max = 2.0;        // m/s^2
  double delta_max = 0.6;    // rad
  double v_max = 3.0;        // m/s
};

/// One explicit-Euler step of the kinematic bicycle model:
///   x += v cos(psi) dt,  y += v sin(psi) dt,
///   v += a dt (clamped to +/- v_max),  psi += v tan(delta)/L dt.
VehicleState step(const VehicleState& state, const ControlCommand& u, double dt,
                  const VehicleParams& params);

/// Ackermann minimum turning radius L / tan(delta_max).
double min_turn_radius(const VehicleParams& params);

/// Body rectangle at the given state, CCW vertices in world meters.
Polygon footprint(const VehicleState& state, const VehicleParams& params);

/// Body rectangle in the rear-axle frame as halfspaces G y <= g
/// (rows of G are unit normals: +x, -x, +y, -y).
struct BodyPolytope {
  double g_front = 0.0;  // forward extent from rear axle
  double g_rear = 0.0;   // rearward extent
  double g_half_width = 0.0;

  Polygon vertices() const;  // CCW, rear-axle frame
};

BodyPolytope body_polytope(const VehicleParams& params);

}  // namespace parkplan
