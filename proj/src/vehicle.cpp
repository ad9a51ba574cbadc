#include "parkplan/vehicle.hpp"

#include <algorithm>
#include <cmath>

#include "parkplan/errors.hpp"

namespace parkplan {

VehicleState step(const VehicleState& state, const ControlCommand& u, double dt,
                  const VehicleParams& params) {
  if (!std::isfinite(state.x) || !std::isfinite(state.y) ||
      !std::isfinite(state.v) || !std::isfinite(state.psi) ||
      !std::isfinite(u.a) || !std::isfinite(u.delta)) {
    throw DomainError("vehicle step: non-finite input");
  }
  VehicleState next;
  next.x = state.x + state.v * std::cos(state.psi) * dt;
  next.y = state.y + state.v * std::sin(state.psi) * dt;
  next.v = std::clamp(state.v + u.a * dt, -params.v_max, params.v_max);
  next.psi = normalize_angle(state.psi +
                             state.v * std::tan(u.delta) / params.wheelbase * dt);
  return next;
}

double min_turn_radius(const VehicleParams& params) {
  if (params.delta_max <= 0.0 || params.delta_max >= M_PI / 2.0) {
    throw DomainError("min_turn_radius: delta_max outside (0, pi/2)");
  }
  return params.wheelbase / std::tan(params.delta_max);
}

Polygon BodyPolytope::vertices() const {
  return {{g_front, -g_half_width},
          {g_front, g_half_width},
          {-g_rear, g_half_width},
          {-g_rear, -g_half_width}};
}

BodyPolytope body_polytope(const VehicleParams& params) {
  BodyPolytope body;
  body.g_rear = params.rear_overhang;
  body.g_front = params.length - params.rear_overhang;
  body.g_half_width = params.width / 2.0;
  return body;
}

Polygon footprint(const VehicleState& state, const VehicleParams& params) {
  const Polygon body = body_polytope(params).vertices();
  Polygon out;
  out.reserve(4);
  const Vec2 t{state.x, state.y};
  for (const Vec2& corner : body) {
    out.push_back(rotate(corner, state.psi) + t);
  }
  return out;
}

}  // namespace parkplan
