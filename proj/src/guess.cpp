#include "parkplan/guess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parkplan/errors.hpp"

namespace parkplan {

namespace {

double mod2pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

Vec2 heading_dir(double psi) { return {std::cos(psi), std::sin(psi)}; }

// Arc segment traversed forward: +1 = left (ccw), -1 = right.
struct Arc {
  Vec2 center;
  double entry_psi = 0.0;  // heading at arc start
  double sweep = 0.0;      // nonnegative
  int turn = 1;
  double radius = 0.0;

  Pose at(double s) const {
    const double dpsi = turn * s / radius;
    const double psi = entry_psi + dpsi;
    // Car sits at radius from the center, opposite the turn normal.
    const Vec2 offset = heading_dir(entry_psi - turn * M_PI / 2.0 + dpsi);
    return {center.x + radius * offset.x, center.y + radius * offset.y, psi};
  }
  double length() const { return radius * sweep; }
};

struct ArcLine {
  Arc arc1;
  Vec2 line_start;
  double line_psi = 0.0;
  double line_len = 0.0;
  Arc arc2;
  double total = std::numeric_limits<double>::infinity();

  Pose at(double s) const {
    if (s <= arc1.length()) return arc1.at(s);
    s -= arc1.length();
    if (s <= line_len) {
      const Vec2 d = heading_dir(line_psi);
      return {line_start.x + s * d.x, line_start.y + s * d.y, line_psi};
    }
    s -= line_len;
    return arc2.at(std::min(s, arc2.length()));
  }

  // Steering sign at arc position s: turn direction on arcs, 0 on the line.
  int turn_at(double s) const {
    if (s < arc1.length() - 1e-12) return arc1.turn;
    if (s < arc1.length() + line_len - 1e-12) return 0;
    return arc2.turn;
  }
};

Vec2 turn_center(const Pose& p, double R, int turn) {
  const Vec2 n = heading_dir(p.psi + turn * M_PI / 2.0);
  return {p.x + R * n.x, p.y + R * n.y};
}

std::optional<ArcLine> connect(const Pose& s, const Pose& g, double R,
                               int turn1, int turn2) {
  ArcLine path;
  path.arc1.center = turn_center(s, R, turn1);
  path.arc1.entry_psi = s.psi;
  path.arc1.turn = turn1;
  path.arc1.radius = R;
  path.arc2.radius = R;
  path.arc2.turn = turn2;

  const Vec2 c2 = turn_center(g, R, turn2);
  const Vec2 delta = c2 - path.arc1.center;
  const double d = delta.norm();
  const double phi = std::atan2(delta.y, delta.x);

  double tangent_psi;
  double line_len;
  if (turn1 == turn2) {
    // Outer tangent; exists for any center distance.
    if (d < 1e-12) {
      tangent_psi = s.psi;
      line_len = 0.0;
    } else {
      tangent_psi = phi;
      line_len = d;
    }
  } else {
    // Inner tangent needs the circles at least touching.
    if (d < 2.0 * R - 1e-12) return std::nullopt;
    line_len = std::sqrt(std::max(0.0, d * d - 4.0 * R * R));
    tangent_psi = phi + turn1 * std::atan2(2.0 * R, line_len);
  }

  path.arc1.sweep = mod2pi(turn1 * (tangent_psi - s.psi));
  path.arc2.sweep = mod2pi(turn2 * (g.psi - tangent_psi));
  path.arc2.center = c2;
  path.arc2.entry_psi = tangent_psi;
  path.line_psi = tangent_psi;
  path.line_len = line_len;
  const Pose arc1_end = path.arc1.at(path.arc1.length());
  path.line_start = {arc1_end.x, arc1_end.y};
  path.total = path.arc1.length() + line_len + path.arc2.length();
  return path;
}

}  // namespace

VehicleState interpolate_state(const VehicleState& a, const VehicleState& b,
                               double alpha) {
  VehicleState out;
  out.x = a.x + alpha * (b.x - a.x);
  out.y = a.y + alpha * (b.y - a.y);
  out.v = a.v + alpha * (b.v - a.v);
  out.psi = normalize_angle(a.psi + alpha * angle_diff(b.psi, a.psi));
  return out;
}

double trajectory_length(const Trajectory& traj) {
  double len = 0.0;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    len += std::hypot(traj.states[i].x - traj.states[i - 1].x,
                      traj.states[i].y - traj.states[i - 1].y);
  }
  return len;
}

Trajectory arc_line_guess(const Pose& start_pose, const Pose& goal_pose,
                          double R, int N, double t_s,
                          const VehicleParams& params, bool reverse) {
  if (N < 2) throw DomainError("arc_line_guess: N must be >= 2");
  if (t_s <= 0.0) throw DomainError("arc_line_guess: t_s must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw GeometryError("arc_line_guess: invalid radius");
  }

  Trajectory traj;
  traj.t_s = t_s;

  const double pos_gap = std::hypot(goal_pose.x - start_pose.x,
                                    goal_pose.y - start_pose.y);
  if (pos_gap < 1e-12 &&
      std::abs(angle_diff(goal_pose.psi, start_pose.psi)) < 1e-12) {
    traj.states.assign(N + 1, VehicleState{start_pose.x, start_pose.y, 0.0,
                                           normalize_angle(start_pose.psi)});
    traj.controls.assign(N, ControlCommand{});
    return traj;
  }

  // A reverse maneuver from A to B follows the forward geometry from B
  // to A played backwards; headings are unchanged, speed flips sign.
  const Pose& from = reverse ? goal_pose : start_pose;
  const Pose& to = reverse ? start_pose : goal_pose;

  ArcLine best;
  for (int turn1 : {+1, -1}) {
    for (int turn2 : {+1, -1}) {
      if (auto cand = connect(from, to, R, turn1, turn2)) {
        if (cand->total < best.total) best = *cand;
      }
    }
  }
  if (!std::isfinite(best.total)) {
    throw GeometryError("arc_line_guess: poses not connectable at this radius");
  }

  const double S = best.total;
  const double speed = S / (N * t_s);
  const double steer_mag = std::atan(params.wheelbase / R);

  traj.states.resize(N + 1);
  traj.controls.resize(N);
  for (int i = 0; i <= N; ++i) {
    const double s_fwd = reverse ? S * (N - i) / N : S * i / N;
    const Pose p = best.at(s_fwd);
    traj.states[i] = {p.x, p.y, reverse ? -speed : speed, normalize_angle(p.psi)};
  }
  for (int k = 0; k < N; ++k) {
    const double mid_i = k + 0.5;
    const double s_fwd = reverse ? S * (N - mid_i) / N : S * mid_i / N;
    const int turn = best.turn_at(s_fwd);
    traj.controls[k] = {0.0, turn * steer_mag};
  }
  // Snap the endpoints exactly onto the requested poses.
  traj.states.front().x = start_pose.x;
  traj.states.front().y = start_pose.y;
  traj.states.front().psi = normalize_angle(start_pose.psi);
  traj.states.back().x = goal_pose.x;
  traj.states.back().y = goal_pose.y;
  traj.states.back().psi = normalize_angle(goal_pose.psi);
  return traj;
}

GuessValidation validate_guess(const Trajectory& traj,
                               const std::vector<Polygon>& obstacles,
                               const VehicleParams& params) {
  GuessValidation result;
  const int interpolants = 4;
  const std::size_t n = traj.states.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int sub_steps = (k + 1 < n) ? interpolants + 1 : 1;
    for (int j = 0; j < sub_steps; ++j) {
      const VehicleState state =
          j == 0 ? traj.states[k]
                 : interpolate_state(traj.states[k], traj.states[k + 1],
                                     static_cast<double>(j) / (interpolants + 1));
      const Polygon body = footprint(state, params);
      for (const Polygon& obs : obstacles) {
        if (convex_polygons_intersect(body, obs)) {
          result.collision_free = false;
          result.first_violation = static_cast<int>(k);
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace parkplan
