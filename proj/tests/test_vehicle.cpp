#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "parkplan/vehicle.hpp"
#include "parkplan/errors.hpp"

using namespace parkplan;

namespace {

// Kasa algebraic circle fit: minimizes sum((|p-c|^2 - R^2)^2), linear in
// (cx, cy, R^2 - |c|^2). Independent of the model code.
struct CircleFit {
  double cx, cy, radius;
};

CircleFit fit_circle(const std::vector<Vec2>& pts) {
  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
  const double n = static_cast<double>(pts.size());
  for (const Vec2& p : pts) {
    const double z = p.x * p.x + p.y * p.y;
    sxx += p.x * p.x;
    sxy += p.x * p.y;
    syy += p.y * p.y;
    sx += p.x;
    sy += p.y;
    sxz += p.x * z;
    syz += p.y * z;
    sz += z;
  }
  // Solve the 3x3 normal equations with Cramer's rule.
  const double a11 = sxx, a12 = sxy, a13 = sx;
  const double a22 = syy, a23 = sy, a33 = n;
  const double b1 = sxz, b2 = syz, b3 = sz;
  const double det = a11 * (a22 * a33 - a23 * a23) -
                     a12 * (a12 * a33 - a23 * a13) +
                     a13 * (a12 * a23 - a22 * a13);
  const double dx = b1 * (a22 * a33 - a23 * a23) -
                    a12 * (b2 * a33 - a23 * b3) +
                    a13 * (b2 * a23 - a22 * b3);
  const double dy = a11 * (b2 * a33 - a23 * b3) -
                    b1 * (a12 * a33 - a23 * a13) +
                    a13 * (a12 * b3 - b2 * a13);
  const double dz = a11 * (a22 * b3 - b2 * a23) -
                    a12 * (a12 * b3 - b2 * a13) +
                    b1 * (a12 * a23 - a22 * a13);
  CircleFit fit;
  const double A = dx / det, B = dy / det, C = dz / det;
  fit.cx = A / 2.0;
  fit.cy = B / 2.0;
  fit.radius = std::sqrt(C + fit.cx * fit.cx + fit.cy * fit.cy);
  return fit;
}

}  // namespace

TEST_CASE("step: straight line") {
  VehicleParams car;
  const VehicleState next = step({0, 0, 1, 0}, {0, 0}, 0.1, car);
  CHECK(next.x == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(next.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(next.v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(next.psi == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("step: zero velocity is a fixed point for any steering") {
  VehicleParams car;
  for (double psi0 : {0.0, 1.2, -2.9}) {
    const VehicleState s0{4.0, -2.0, 0.0, psi0};
    const VehicleState next = step(s0, {0.0, car.delta_max}, 0.05, car);
    CHECK(next.x == s0.x);
    CHECK(next.y == s0.y);
    CHECK(next.v == s0.v);
    CHECK(next.psi == doctest::Approx(s0.psi).epsilon(1e-15));
  }
}

TEST_CASE("step: velocity clamping") {
  VehicleParams car;
  VehicleState s{0, 0, car.v_max, 0};
  s = step(s, {car.a_max, 0}, 1.0, car);
  CHECK(s.v == car.v_max);
  s.v = -car.v_max;
  s = step(s, {-car.a_max, 0}, 1.0, car);
  CHECK(s.v == -car.v_max);
}

TEST_CASE("step rejects non-finite input") {
  VehicleParams car;
  CHECK_THROWS_AS(step({NAN, 0, 0, 0}, {0, 0}, 0.1, car), DomainError);
  CHECK_THROWS_AS(step({0, 0, 0, 0}, {0, INFINITY}, 0.1, car), DomainError);
}

TEST_CASE("constant full-steer rollout traces the Ackermann circle") {
  VehicleParams car;
  VehicleState s{0, 0, 1, 0};
  std::vector<Vec2> trace;
  for (int i = 0; i < 1000; ++i) {
    s = step(s, {0.0, car.delta_max}, 0.01, car);
    trace.push_back({s.x, s.y});
  }
  const CircleFit fit = fit_circle(trace);
  const double expected = min_turn_radius(car);
  CHECK(std::abs(fit.radius - expected) / expected < 0.02);
}

TEST_CASE("min_turn_radius") {
  VehicleParams car;
  car.wheelbase = 2.7;
  car.delta_max = M_PI / 4.0;
  CHECK(min_turn_radius(car) == doctest::Approx(2.7).epsilon(1e-12));

  car.wheelbase = 2.85;
  car.delta_max = 0.6;
  CHECK(min_turn_radius(car) == doctest::Approx(4.166).epsilon(1e-3));

  // radius diverges as the steering limit shrinks
  car.delta_max = 2.0 * M_PI / 180.0;
  const double r2 = min_turn_radius(car);
  car.delta_max = 1.0 * M_PI / 180.0;
  CHECK(min_turn_radius(car) > r2);

  car.delta_max = 0.0;
  CHECK_THROWS_AS(min_turn_radius(car), DomainError);
}

TEST_CASE("footprint: axis aligned and reflected") {
  VehicleParams car;
  car.length = 4.0;
  car.width = 2.0;
  car.rear_overhang = 1.0;

  const Polygon fwd = footprint({0, 0, 0, 0}, car);
  double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
  for (const Vec2& v : fwd) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  CHECK(min_x == doctest::Approx(-1.0));
  CHECK(max_x == doctest::Approx(3.0));
  CHECK(min_y == doctest::Approx(-1.0));
  CHECK(max_y == doctest::Approx(1.0));
  CHECK(polygon_is_ccw(fwd));

  const Polygon rev = footprint({0, 0, 0, M_PI}, car);
  min_x = 1e9;
  max_x = -1e9;
  for (const Vec2& v : rev) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
  }
  CHECK(min_x == doctest::Approx(-3.0));
  CHECK(max_x == doctest::Approx(1.0));
}

TEST_CASE("footprint rotation matches direct matrix multiply") {
  VehicleParams car;
  car.length = 4.0;
  car.width = 2.0;
  car.rear_overhang = 1.0;
  const Polygon zero = footprint({0, 0, 0, 0}, car);
  const double psi = M_PI / 4.0;
  const Polygon rotated = footprint({0, 0, 0, psi}, car);
  for (std::size_t i = 0; i < zero.size(); ++i) {
    const double c = std::cos(psi), s = std::sin(psi);
    CHECK(rotated[i].x ==
          doctest::Approx(c * zero[i].x - s * zero[i].y).epsilon(1e-12));
    CHECK(rotated[i].y ==
          doctest::Approx(s * zero[i].x + c * zero[i].y).epsilon(1e-12));
  }
}

TEST_CASE("footprint area is invariant under heading") {
  VehicleParams car;
  for (double psi = -3.1; psi < 3.2; psi += 0.37) {
    const Polygon poly = footprint({2.0, -7.0, 0.5, psi}, car);
    CHECK(polygon_signed_area(poly) ==
          doctest::Approx(car.length * car.width).epsilon(1e-9));
  }
}
