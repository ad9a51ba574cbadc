#include "parkplan/simtrack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parkplan {

namespace {

// Nearest reference index within a forward window of `from`.
std::size_t nearest_index(const std::vector<Vec2>& ref, const Vec2& p,
                          std::size_t from, std::size_t window) {
  std::size_t best = from;
  double best_d = std::numeric_limits<double>::infinity();
  const std::size_t hi = std::min(ref.size(), from + window);
  for (std::size_t i = from; i < hi; ++i) {
    const double d = (ref[i] - p).squared_norm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

DriveLog track(const std::vector<Vec2>& reference, const VehicleParams& params,
               const TrackerConfig& cfg) {
  if (reference.size() < 2) {
    throw DegenerateInput("track: reference needs >= 2 points");
  }

  DriveLog log;
  log.dt = cfg.dt;

  VehicleState state;
  state.x = reference.front().x;
  state.y = reference.front().y;
  const Vec2 first_seg = reference[1] - reference[0];
  state.psi = std::atan2(first_seg.y, first_seg.x);
  state.v = 0.0;

  std::vector<double> accel_grid(cfg.accel_samples);
  for (int i = 0; i < cfg.accel_samples; ++i) {
    accel_grid[i] = -params.a_max +
                    2.0 * params.a_max * i / (cfg.accel_samples - 1);
  }
  std::vector<double> steer_grid(cfg.steer_samples);
  for (int i = 0; i < cfg.steer_samples; ++i) {
    steer_grid[i] = -params.delta_max +
                    2.0 * params.delta_max * i / (cfg.steer_samples - 1);
  }

  const Vec2 goal = reference.back();
  const std::size_t window = 50;
  std::size_t progress = 0;
  ControlCommand prev_u;

  const int max_steps = static_cast<int>(cfg.max_time / cfg.dt);
  for (int step_i = 0; step_i < max_steps; ++step_i) {
    const Vec2 pos{state.x, state.y};
    progress = nearest_index(reference, pos, progress, window);
    const double cross_track = (reference[progress] - pos).norm();
    if (cross_track > cfg.max_cross_track) throw TrackingDiverged(log);

    const double goal_dist = (goal - pos).norm();
    if (goal_dist <= cfg.goal_pos_tol && std::abs(state.v) <= cfg.goal_speed_tol) {
      break;
    }

    double best_cost = std::numeric_limits<double>::infinity();
    ControlCommand best_u;
    for (double a : accel_grid) {
      for (double delta : steer_grid) {
        const ControlCommand u{a, delta};
        double cost = cfg.w_accel * a * a + cfg.w_steer * delta * delta;
        const double da = a - prev_u.a;
        const double dd = delta - prev_u.delta;
        cost += cfg.w_rate * (da * da + dd * dd);

        VehicleState rollout = state;
        std::size_t roll_prog = progress;
        for (int h = 0; h < cfg.horizon; ++h) {
          rollout = parkplan::step(rollout, u, cfg.dt, params);
          const Vec2 rp{rollout.x, rollout.y};
          roll_prog = nearest_index(reference, rp, roll_prog, window);
          const double pos_err = (reference[roll_prog] - rp).squared_norm();
          cost += cfg.w_pos * pos_err;
        }
        const Vec2 end_pos{rollout.x, rollout.y};
        cost += cfg.w_terminal * (goal - end_pos).squared_norm();

        if (cost < best_cost) {
          best_cost = cost;
          best_u = u;
        }
      }
    }

    log.entries.push_back({step_i * cfg.dt, state, best_u});
    state = parkplan::step(state, best_u, cfg.dt, params);
    prev_u = best_u;
  }
  if (log.entries.empty()) {
    // Already at the goal: record a single zero-control sample.
    log.entries.push_back({0.0, state, ControlCommand{}});
  }
  return log;
}

ComfortMetrics comfort_metrics(const DriveLog& log) {
  if (log.entries.empty()) throw DegenerateInput("comfort_metrics: empty log");
  ComfortMetrics m;
  double sum_a = 0.0;
  double sum_d = 0.0;
  for (const LogEntry& e : log.entries) {
    sum_a += std::abs(e.u.a);
    sum_d += std::abs(e.u.delta);
  }
  const double n = static_cast<double>(log.entries.size());
  m.avg_abs_accel = sum_a / n;
  m.avg_abs_steer_deg = sum_d / n * 180.0 / M_PI;
  m.duration = n * log.dt;
  for (std::size_t i = 1; i < log.entries.size(); ++i) {
    m.path_length += std::hypot(
        log.entries[i].state.x - log.entries[i - 1].state.x,
        log.entries[i].state.y - log.entries[i - 1].state.y);
  }
  return m;
}

}  // namespace parkplan
