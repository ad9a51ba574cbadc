#pragma once

#include <array>
#include <optional>
#include <vector>

#include "parkplan/errors.hpp"
#include "parkplan/geometry.hpp"
#include "parkplan/guess.hpp"
#include "parkplan/vehicle.hpp"

namespace parkplan {

/// Convex obstacle {y : A y <= b} with unit outward normals per edge.
struct ObstaclePolytope {
  std::vector<Vec2> normals;   // rows of A
  std::vector<double> offsets;  // b
  Polygon vertices;            // CCW hull, kept for oracles and plots

  std::size_t faces() const { return normals.size(); }
  bool contains(const Vec2& p, double tol = 1e-9) const;
};

/// Halfspace representation of a CCW convex vertex list.
ObstaclePolytope polytope_from_vertices(const Polygon& vertices);

struct ObjectiveWeights {
  double w1 = 1.0;   // state tracking
  double w2 = 0.1;   // control magnitude
  double w3 = 0.1;   // control rate
  double w4 = 0.5;   // initial-control match
  double kappa = 1000.0;  // collision slack penalty
};

struct PositionBounds {
  double x_min = -1e9;
  double x_max = 1e9;
  double y_min = -1e9;
  double y_max = 1e9;
};

struct ParkingProblem {
  VehicleState x_start;
  VehicleState x_final;  // v = 0
  int horizon = 40;      // N: N+2 states, N+1 controls
  double t_s = 0.25;
  std::vector<ObstaclePolytope> obstacles;
  VehicleParams vehicle;
  ObjectiveWeights weights;
  PositionBounds bounds;
  ControlCommand u_start;
  double min_separation = 0.05;  // required dual margin, meters
};

struct SolverConfig {
  double eps_con = 1e-3;
  double eps_opt = 1e-3;
  int max_outer = 50;
  int max_inner = 500;
  double rho0 = 10.0;
  double rho_growth = 4.0;
  double rho_max = 1e8;
};

/// lambda[k][m] has one entry per obstacle face; mu[k][m] one per body
/// face; s[k][m] is the collision slack.
struct DualVariables {
  std::vector<std::vector<std::vector<double>>> lambda;
  std::vector<std::vector<std::array<double, 4>>> mu;
  std::vector<std::vector<double>> s;
};

struct SolveReport {
  int outer_iterations = 0;
  int inner_iterations = 0;
  double max_violation = 0.0;
  double first_order_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
};

struct OptimizedTrajectory {
  std::vector<VehicleState> states;      // N+2
  std::vector<ControlCommand> controls;  // N+1
  DualVariables duals;
  SolveReport report;
};

/// Iteration cap hit with constraints still violated; carries the best
/// iterate found.
struct Infeasible : Error {
  OptimizedTrajectory best;
  double violation;
  Infeasible(OptimizedTrajectory iterate, double v);
};

/// Stage cost of Eq-style tracking objective:
///   w1 |x - x_ref|^2 + w2 |u|^2 + w3 |(u - u_prev)/t_s|^2
///   + [k == 0] w4 |u - u_start|^2.
double stage_cost(const VehicleState& x, const VehicleState& x_ref,
                  const ControlCommand& u, const ControlCommand& u_prev,
                  const ControlCommand& u_start, int k, double t_s,
                  const ObjectiveWeights& weights);

struct CollisionResiduals {
  double margin_value = 0.0;     // -g^T mu + (A t(x) - b)^T lambda
  double margin_residual = 0.0;  // violation of margin + s >= 0
  Vec2 stationarity_residual;    // G^T mu + R(x)^T A^T lambda
  double normal_norm_residual = 0.0;  // | |A^T lambda| - 1 |
};

CollisionResiduals collision_residuals(const VehicleState& x,
                                       const ObstaclePolytope& obstacle,
                                       const BodyPolytope& body,
                                       const std::vector<double>& lambda,
                                       const std::array<double, 4>& mu,
                                       double s);

struct PairDuals {
  std::vector<double> lambda;
  std::array<double, 4> mu{};
  double margin = 0.0;  // equals the Euclidean gap at the optimum
  bool separated = false;
};

/// Optimal separation duals for one static pose/obstacle pair. Used to
/// warm-start the solver and for strong-duality checks.
PairDuals optimize_pair_duals(const VehicleState& x,
                              const ObstaclePolytope& obstacle,
                              const BodyPolytope& body,
                              const VehicleParams& params);

OptimizedTrajectory solve_parking(const ParkingProblem& problem,
                                  const Trajectory& initial_guess,
                                  const SolverConfig& cfg = {});

/// Max relative mismatch between the solver's analytic gradient and a
/// central finite difference (step 1e-6) at a randomly perturbed iterate.
/// Probes a random subset of coordinates; test hook.
double solver_gradient_check(const ParkingProblem& problem,
                             const Trajectory& initial_guess, unsigned seed,
                             int probes = 200);

struct VerifyReport {
  bool collision_free = true;
  std::optional<int> first_collision_knot;
  double max_dynamics_defect = 0.0;
  double terminal_position_error = 0.0;
  double terminal_heading_error = 0.0;
  bool bounds_ok = true;
};

/// Independent feasibility check: polygon-intersection collision sweep
/// (knots + 4 interpolants), defects replayed through vehicle step(),
/// terminal pose error. Never reads the duals.
VerifyReport verify_trajectory(const OptimizedTrajectory& traj,
                               const ParkingProblem& problem);

}  // namespace parkplan
