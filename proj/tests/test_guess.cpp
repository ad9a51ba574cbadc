#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "parkplan/guess.hpp"
#include "parkplan/errors.hpp"

using namespace parkplan;

namespace {

VehicleParams car() { return VehicleParams{}; }

double guess_signed_length(const Trajectory& traj) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    s += std::abs(traj.states[k].v) * traj.t_s;
  }
  return s;
}

}  // namespace

TEST_CASE("start == goal produces a fully stationary trajectory") {
  const Pose p{3.0, -1.0, 0.7};
  const Trajectory traj = arc_line_guess(p, p, 5.0, 20, 0.25, car());
  REQUIRE(traj.states.size() == 21);
  REQUIRE(traj.controls.size() == 20);
  for (const VehicleState& s : traj.states) {
    CHECK(s.x == p.x);
    CHECK(s.y == p.y);
    CHECK(s.v == 0.0);
  }
  for (const ControlCommand& u : traj.controls) {
    CHECK(u.a == 0.0);
    CHECK(u.delta == 0.0);
  }
}

TEST_CASE("collinear same-heading poses yield a pure straight segment") {
  const Trajectory traj =
      arc_line_guess({0, 0, 0}, {10, 0, 0}, 5.0, 20, 0.25, car());
  for (const ControlCommand& u : traj.controls) {
    CHECK(u.delta == doctest::Approx(0.0).epsilon(1e-12));
  }
  for (const VehicleState& s : traj.states) {
    CHECK(std::abs(s.y) < 1e-9);
    CHECK(std::abs(s.psi) < 1e-9);
    CHECK(s.v > 0.0);
  }
  CHECK(guess_signed_length(traj) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("two tangent quarter arcs connect (0,0,0) to (2R,2R,0)") {
  const double R = 5.0;
  const Trajectory traj =
      arc_line_guess({0, 0, 0}, {2 * R, 2 * R, 0}, R, 40, 0.25, car());
  CHECK(guess_signed_length(traj) == doctest::Approx(M_PI * R).epsilon(1e-6));
  CHECK(traj.states.front().x == doctest::Approx(0.0));
  CHECK(traj.states.back().x == doctest::Approx(2 * R).epsilon(1e-9));
  CHECK(traj.states.back().y == doctest::Approx(2 * R).epsilon(1e-9));
}

TEST_CASE("endpoints are exact") {
  const Pose a{1.3, 2.7, 0.4}, b{8.9, -3.2, -2.1};
  const Trajectory traj = arc_line_guess(a, b, 6.0, 30, 0.25, car());
  CHECK(std::abs(traj.states.front().x - a.x) < 1e-9);
  CHECK(std::abs(traj.states.front().y - a.y) < 1e-9);
  CHECK(std::abs(angle_diff(traj.states.front().psi, a.psi)) < 1e-9);
  CHECK(std::abs(traj.states.back().x - b.x) < 1e-9);
  CHECK(std::abs(traj.states.back().y - b.y) < 1e-9);
  CHECK(std::abs(angle_diff(traj.states.back().psi, b.psi)) < 1e-9);
}

TEST_CASE("curvature is piecewise constant in {0, 1/R} and heading continuous") {
  const double R = 5.0;
  const Trajectory traj =
      arc_line_guess({0, 0, 0}, {14.0, 9.0, 1.1}, R, 60, 0.25, car());
  const double ds = guess_signed_length(traj) / 60.0;
  int junction_intervals = 0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double dpsi =
        angle_diff(traj.states[k].psi, traj.states[k - 1].psi);
    CHECK(std::abs(dpsi) < 0.5);  // continuity at the sample scale
    const double kappa = std::abs(dpsi) / ds;
    CHECK(kappa < 1.0 / R + 0.02 / R);  // never tighter than radius R
    const bool straight = kappa < 1e-6;
    const bool arc = std::abs(kappa - 1.0 / R) < 0.02 / R;
    // intervals straddling an arc/line junction mix the two curvatures
    if (!straight && !arc) ++junction_intervals;
  }
  CHECK(junction_intervals <= 2);
}

TEST_CASE("arc-length consistency of the speed profile") {
  const Trajectory traj =
      arc_line_guess({0, 0, 0}, {12.0, 5.0, 0.8}, 5.0, 50, 0.25, car());
  double chord = 0.0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    chord += std::hypot(traj.states[k].x - traj.states[k - 1].x,
                        traj.states[k].y - traj.states[k - 1].y);
  }
  const double vsum = guess_signed_length(traj);
  CHECK(std::abs(vsum - chord) / chord < 0.01);
}

TEST_CASE("reverse gear flips the speed sign and keeps headings") {
  const Pose start{10.0, 8.0, 0.0};
  const Pose spot{15.0, 2.0, M_PI / 2.0};
  const Trajectory traj =
      arc_line_guess(start, spot, 6.0, 40, 0.25, car(), /*reverse=*/true);
  CHECK(traj.states.front().x == doctest::Approx(start.x));
  CHECK(traj.states.front().y == doctest::Approx(start.y));
  CHECK(traj.states.back().x == doctest::Approx(spot.x).epsilon(1e-9));
  CHECK(traj.states.back().y == doctest::Approx(spot.y).epsilon(1e-9));
  CHECK(std::abs(angle_diff(traj.states.back().psi, spot.psi)) < 1e-9);
  for (const VehicleState& s : traj.states) CHECK(s.v < 0.0);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(arc_line_guess({0, 0, 0}, {5, 5, 0}, -1.0, 20, 0.25, car()),
                  GeometryError);
  CHECK_THROWS_AS(arc_line_guess({0, 0, 0}, {5, 5, 0}, 5.0, 1, 0.25, car()),
                  DomainError);
  CHECK_THROWS_AS(arc_line_guess({0, 0, 0}, {5, 5, 0}, 5.0, 20, 0.0, car()),
                  DomainError);
}

TEST_CASE("validate_guess with no obstacles passes") {
  const Trajectory traj =
      arc_line_guess({0, 0, 0}, {10, 4, 0.5}, 5.0, 30, 0.25, car());
  const GuessValidation v = validate_guess(traj, {}, car());
  CHECK(v.collision_free);
  CHECK_FALSE(v.first_violation.has_value());
}

TEST_CASE("validate_guess flags an obstacle covering the goal") {
  const Trajectory traj =
      arc_line_guess({0, 0, 0}, {12, 0, 0}, 5.0, 30, 0.25, car());
  const Polygon blocker{{10.0, -2.0}, {14.0, -2.0}, {14.0, 2.0}, {10.0, 2.0}};
  const GuessValidation v = validate_guess(traj, {blocker}, car());
  CHECK_FALSE(v.collision_free);
  REQUIRE(v.first_violation.has_value());
  CHECK(*v.first_violation >= 0);
}

TEST_CASE("interpolate_state wraps the heading the short way") {
  const VehicleState a{0, 0, 1, 3.0};
  const VehicleState b{1, 1, 1, -3.0};
  const VehicleState mid = interpolate_state(a, b, 0.5);
  CHECK(std::abs(std::abs(mid.psi) - M_PI) < 0.15);
}
