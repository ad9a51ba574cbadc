#include "parkplan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "parkplan/errors.hpp"

namespace parkplan {

bool ObstaclePolytope::contains(const Vec2& p, double tol) const {
  for (std::size_t f = 0; f < normals.size(); ++f) {
    if (normals[f].dot(p) > offsets[f] + tol) return false;
  }
  return true;
}

ObstaclePolytope polytope_from_vertices(const Polygon& vertices) {
  if (vertices.size() < 3) {
    throw GeometryError("polytope_from_vertices: need >= 3 vertices");
  }
  if (!polygon_is_convex_ccw(vertices)) {
    throw GeometryError("polytope_from_vertices: vertices must be convex CCW");
  }
  ObstaclePolytope poly;
  poly.vertices = vertices;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = vertices[(i + 1) % n] - vertices[i];
    const double len = e.norm();
    const Vec2 normal{e.y / len, -e.x / len};  // outward for CCW order
    poly.normals.push_back(normal);
    poly.offsets.push_back(normal.dot(vertices[i]));
  }
  return poly;
}

Infeasible::Infeasible(OptimizedTrajectory iterate, double v)
    : Error("solve_parking: iteration cap with constraint violation " +
            std::to_string(v)),
      best(std::move(iterate)),
      violation(v) {}

double stage_cost(const VehicleState& x, const VehicleState& x_ref,
                  const ControlCommand& u, const ControlCommand& u_prev,
                  const ControlCommand& u_start, int k, double t_s,
                  const ObjectiveWeights& weights) {
  const double dx = x.x - x_ref.x;
  const double dy = x.y - x_ref.y;
  const double dv = x.v - x_ref.v;
  const double dpsi = angle_diff(x.psi, x_ref.psi);
  double cost = weights.w1 * (dx * dx + dy * dy + dv * dv + dpsi * dpsi);
  cost += weights.w2 * (u.a * u.a + u.delta * u.delta);
  const double ra = (u.a - u_prev.a) / t_s;
  const double rd = (u.delta - u_prev.delta) / t_s;
  cost += weights.w3 * (ra * ra + rd * rd);
  if (k == 0) {
    const double da = u.a - u_start.a;
    const double dd = u.delta - u_start.delta;
    cost += weights.w4 * (da * da + dd * dd);
  }
  return cost;
}

CollisionResiduals collision_residuals(const VehicleState& x,
                                       const ObstaclePolytope& obstacle,
                                       const BodyPolytope& body,
                                       const std::vector<double>& lambda,
                                       const std::array<double, 4>& mu,
                                       double s) {
  CollisionResiduals r;
  const Vec2 t{x.x, x.y};
  Vec2 n;
  double support = 0.0;
  for (std::size_t f = 0; f < obstacle.faces(); ++f) {
    n = n + obstacle.normals[f] * lambda[f];
    support += lambda[f] * (obstacle.normals[f].dot(t) - obstacle.offsets[f]);
  }
  const double g_mu = body.g_front * mu[0] + body.g_rear * mu[1] +
                      body.g_half_width * (mu[2] + mu[3]);
  r.margin_value = -g_mu + support;
  r.margin_residual = std::max(0.0, -(r.margin_value + s));
  const Vec2 gt_mu{mu[0] - mu[1], mu[2] - mu[3]};
  r.stationarity_residual = gt_mu + rotate(n, -x.psi);
  r.normal_norm_residual = std::abs(n.norm() - 1.0);
  return r;
}

namespace {

Polygon body_at(const BodyPolytope& body, const VehicleState& x) {
  Polygon out;
  for (const Vec2& v : body.vertices()) {
    out.push_back(rotate(v, x.psi) + Vec2{x.x, x.y});
  }
  return out;
}

// Nonnegative face combination reproducing a unit direction: pick the two
// cyclically adjacent outward normals bracketing dir.
std::vector<double> lambda_from_direction(const ObstaclePolytope& obstacle,
                                          const Vec2& dir) {
  const std::size_t n = obstacle.faces();
  std::vector<double> lambda(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Vec2& ai = obstacle.normals[i];
    const Vec2& aj = obstacle.normals[j];
    const double det = ai.cross(aj);
    if (det <= 1e-12) continue;
    const double li = dir.cross(aj) / det;
    const double lj = ai.cross(dir) / det;
    if (li >= -1e-9 && lj >= -1e-9) {
      lambda[i] = std::max(0.0, li);
      lambda[j] += std::max(0.0, lj);
      return lambda;
    }
  }
  std::size_t best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = obstacle.normals[i].dot(dir);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  lambda[best] = 1.0;
  return lambda;
}

std::array<double, 4> mu_from_normal(const Vec2& n, double psi) {
  const Vec2 w = rotate(n, -psi) * -1.0;  // solves G^T mu = -R^T n
  return {std::max(w.x, 0.0), std::max(-w.x, 0.0), std::max(w.y, 0.0),
          std::max(-w.y, 0.0)};
}

}  // namespace

PairDuals optimize_pair_duals(const VehicleState& x,
                              const ObstaclePolytope& obstacle,
                              const BodyPolytope& body,
                              const VehicleParams& /*params*/) {
  PairDuals out;
  const Polygon foot = body_at(body, x);
  const ClosestPair cp = closest_points(foot, obstacle.vertices);
  Vec2 dir;
  if (cp.distance > 1e-9) {
    out.separated = true;
    dir = (cp.on_a - cp.on_b) * (1.0 / cp.distance);
  } else {
    Vec2 centroid;
    for (const Vec2& v : obstacle.vertices) centroid = centroid + v;
    centroid = centroid * (1.0 / obstacle.vertices.size());
    dir = Vec2{x.x, x.y} - centroid;
    const double dn = dir.norm();
    dir = dn > 1e-9 ? dir * (1.0 / dn) : Vec2{1.0, 0.0};
  }
  out.lambda = lambda_from_direction(obstacle, dir);
  Vec2 n;
  for (std::size_t f = 0; f < obstacle.faces(); ++f) {
    n = n + obstacle.normals[f] * out.lambda[f];
  }
  const double nn = n.norm();
  if (nn > 1e-12) {
    for (double& l : out.lambda) l /= nn;
    n = n * (1.0 / nn);
  }
  out.mu = mu_from_normal(n, x.psi);
  out.margin =
      collision_residuals(x, obstacle, body, out.lambda, out.mu, 0.0)
          .margin_value;
  return out;
}

// ---------------------------------------------------------------------------
// Augmented-Lagrangian solver over states, controls, and collision duals.
//
// Decision vector layout:
//   [ x_1 .. x_N | u_0 .. u_N | (lambda, mu, s) per knot k=0..N, obstacle m ]
// x_0 and x_{N+1} are pinned to the boundary states. Headings are kept
// unwrapped (continuous) internally; equality constraints are the Euler
// dynamics defects, the dual stationarity conditions, and the unit-norm
// condition on A^T lambda. The margin inequality
//   -g^T mu + (A t(x_k) - b)^T lambda + s >= min_separation
// is handled with a PHR multiplier; cone and box constraints by projection.
// ---------------------------------------------------------------------------
namespace {

struct Layout {
  int N = 0;
  int M = 0;
  std::vector<int> faces;
  int n_state_vars = 0;
  int n_control_vars = 0;
  std::vector<int> dual_off;
  int n_vars = 0;

  int state_off(int k) const { return (k - 1) * 4; }
  int control_off(int k) const { return n_state_vars + 2 * k; }
  int lam_off(int k, int m) const { return dual_off[k * M + m]; }
  int mu_off(int k, int m) const { return lam_off(k, m) + faces[m]; }
  int s_off(int k, int m) const { return mu_off(k, m) + 4; }
};

Layout make_layout(const ParkingProblem& p) {
  Layout lay;
  lay.N = p.horizon;
  lay.M = static_cast<int>(p.obstacles.size());
  for (const auto& o : p.obstacles) lay.faces.push_back(static_cast<int>(o.faces()));
  lay.n_state_vars = 4 * lay.N;
  lay.n_control_vars = 2 * (lay.N + 1);
  int off = lay.n_state_vars + lay.n_control_vars;
  if (lay.M > 0) {
    lay.dual_off.resize(static_cast<std::size_t>(lay.N + 1) * lay.M);
    for (int k = 0; k <= lay.N; ++k) {
      for (int m = 0; m < lay.M; ++m) {
        lay.dual_off[k * lay.M + m] = off;
        off += lay.faces[m] + 5;
      }
    }
  }
  lay.n_vars = off;
  return lay;
}

struct Multipliers {
  std::vector<double> dyn;     // 4 per knot interval k=0..N
  std::vector<double> stat;    // 2 per (k, m)
  std::vector<double> norm;    // 1 per (k, m)
  std::vector<double> margin;  // 1 per (k, m), PHR (>= 0)
};

class AugLag {
 public:
  AugLag(const ParkingProblem& p, const Layout& lay,
         std::vector<std::array<double, 4>> x_ref)
      : p_(p), lay_(lay), body_(body_polytope(p.vehicle)),
        x_ref_(std::move(x_ref)) {
    g_ = {body_.g_front, body_.g_rear, body_.g_half_width, body_.g_half_width};
    mult_.dyn.assign(4 * (lay_.N + 1), 0.0);
    mult_.stat.assign(2 * static_cast<std::size_t>(lay_.N + 1) *
                          std::max(1, lay_.M), 0.0);
    mult_.norm.assign(static_cast<std::size_t>(lay_.N + 1) *
                          std::max(1, lay_.M), 0.0);
    mult_.margin.assign(mult_.norm.size(), 0.0);
  }

  // Boundary states with internally continuous heading.
  std::array<double, 4> x0{};
  std::array<double, 4> xF{};
  double rho = 10.0;

  std::array<double, 4> state(const std::vector<double>& z, int k) const {
    if (k == 0) return x0;
    if (k == lay_.N + 1) return xF;
    const int off = lay_.state_off(k);
    return {z[off], z[off + 1], z[off + 2], z[off + 3]};
  }

  void project(std::vector<double>& z) const {
    const auto& veh = p_.vehicle;
    for (int k = 1; k <= lay_.N; ++k) {
      const int off = lay_.state_off(k);
      z[off] = std::clamp(z[off], p_.bounds.x_min, p_.bounds.x_max);
      z[off + 1] = std::clamp(z[off + 1], p_.bounds.y_min, p_.bounds.y_max);
      z[off + 2] = std::clamp(z[off + 2], -veh.v_max, veh.v_max);
    }
    for (int k = 0; k <= lay_.N; ++k) {
      const int off = lay_.control_off(k);
      z[off] = std::clamp(z[off], -veh.a_max, veh.a_max);
      z[off + 1] = std::clamp(z[off + 1], -veh.delta_max, veh.delta_max);
    }
    for (int k = 0; k <= lay_.N; ++k) {
      for (int m = 0; m < lay_.M; ++m) {
        const int lo = lay_.lam_off(k, m);
        const int hi = lay_.s_off(k, m);
        for (int i = lo; i <= hi; ++i) z[i] = std::max(0.0, z[i]);
      }
    }
  }

  struct Eval {
    double phi = 0.0;
    double objective = 0.0;
    double max_violation = 0.0;
  };

  Eval eval(const std::vector<double>& z, std::vector<double>* grad) const {
    Eval out;
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    const double dt = p_.t_s;
    const double L = p_.vehicle.wheelbase;
    const auto& w = p_.weights;

    auto add_eq = [&](double c, double y) {
      out.phi += y * c + 0.5 * rho * c * c;
      out.max_violation = std::max(out.max_violation, std::abs(c));
      return y + rho * c;  // gradient factor
    };

    for (int k = 0; k <= lay_.N; ++k) {
      const auto xk = state(z, k);
      const auto xk1 = state(z, k + 1);
      const int uoff = lay_.control_off(k);
      const double a = z[uoff];
      const double delta = z[uoff + 1];
      const double v = xk[2];
      const double psi = xk[3];
      const double cps = std::cos(psi);
      const double sps = std::sin(psi);
      const double tand = std::tan(delta);

      // Euler dynamics defects.
      const double f0 = xk[0] + v * cps * dt;
      const double f1 = xk[1] + v * sps * dt;
      const double f2 = xk[2] + a * dt;
      const double f3 = xk[3] + v * tand / L * dt;
      const double c0 = xk1[0] - f0;
      const double c1 = xk1[1] - f1;
      const double c2 = xk1[2] - f2;
      const double c3 = xk1[3] - f3;
      const double r0 = add_eq(c0, mult_.dyn[4 * k + 0]);
      const double r1 = add_eq(c1, mult_.dyn[4 * k + 1]);
      const double r2 = add_eq(c2, mult_.dyn[4 * k + 2]);
      const double r3 = add_eq(c3, mult_.dyn[4 * k + 3]);
      if (grad) {
        if (k + 1 <= lay_.N) {
          const int off1 = lay_.state_off(k + 1);
          (*grad)[off1] += r0;
          (*grad)[off1 + 1] += r1;
          (*grad)[off1 + 2] += r2;
          (*grad)[off1 + 3] += r3;
        }
        if (k >= 1) {
          const int off = lay_.state_off(k);
          (*grad)[off] -= r0;
          (*grad)[off + 1] -= r1;
          (*grad)[off + 2] -= cps * dt * r0 + sps * dt * r1 + r2 +
                              tand * dt / L * r3;
          (*grad)[off + 3] -= -v * sps * dt * r0 + v * cps * dt * r1 + r3;
        }
        const double sec2 = 1.0 + tand * tand;
        (*grad)[uoff] -= dt * r2;
        (*grad)[uoff + 1] -= v * dt / L * sec2 * r3;
      }

      // Stage cost.
      double stage = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double d = xk[i] - x_ref_[k][i];
        stage += w.w1 * d * d;
        if (grad && k >= 1) (*grad)[lay_.state_off(k) + i] += 2.0 * w.w1 * d;
      }
      stage += w.w2 * (a * a + delta * delta);
      const double pa = k == 0 ? p_.u_start.a : z[lay_.control_off(k - 1)];
      const double pd = k == 0 ? p_.u_start.delta : z[lay_.control_off(k - 1) + 1];
      const double ra = (a - pa) / dt;
      const double rd = (delta - pd) / dt;
      stage += w.w3 * (ra * ra + rd * rd);
      if (grad) {
        (*grad)[uoff] += 2.0 * w.w2 * a + 2.0 * w.w3 * ra / dt;
        (*grad)[uoff + 1] += 2.0 * w.w2 * delta + 2.0 * w.w3 * rd / dt;
        if (k >= 1) {
          (*grad)[lay_.control_off(k - 1)] -= 2.0 * w.w3 * ra / dt;
          (*grad)[lay_.control_off(k - 1) + 1] -= 2.0 * w.w3 * rd / dt;
        }
      }
      if (k == 0) {
        const double da = a - p_.u_start.a;
        const double dd = delta - p_.u_start.delta;
        stage += w.w4 * (da * da + dd * dd);
        if (grad) {
          (*grad)[uoff] += 2.0 * w.w4 * da;
          (*grad)[uoff + 1] += 2.0 * w.w4 * dd;
        }
      }
      out.objective += stage;
      out.phi += stage;

      // Dualized collision constraints.
      for (int m = 0; m < lay_.M; ++m) {
        const auto& obs = p_.obstacles[m];
        const int lam0 = lay_.lam_off(k, m);
        const int mu0 = lay_.mu_off(k, m);
        const int s0 = lay_.s_off(k, m);
        const int h = lay_.faces[m];
        const int km = k * lay_.M + m;

        Vec2 n;
        double support = 0.0;
        for (int f = 0; f < h; ++f) {
          n = n + obs.normals[f] * z[lam0 + f];
          support += z[lam0 + f] *
                     (obs.normals[f].dot({xk[0], xk[1]}) - obs.offsets[f]);
        }
        const double g_mu = g_[0] * z[mu0] + g_[1] * z[mu0 + 1] +
                            g_[2] * z[mu0 + 2] + g_[3] * z[mu0 + 3];
        const double margin = -g_mu + support;
        const double s_slack = z[s0];

        out.objective += w.kappa * s_slack;
        out.phi += w.kappa * s_slack;
        if (grad) (*grad)[s0] += w.kappa;

        // margin + s - d_min >= 0 via PHR.
        const double c_m = margin + s_slack - p_.min_separation;
        const double yh = mult_.margin[km];
        out.max_violation = std::max(out.max_violation, std::max(0.0, -c_m));
        const double shifted = yh - rho * c_m;
        if (shifted > 0.0) {
          out.phi += (shifted * shifted - yh * yh) / (2.0 * rho);
          const double gfac = -shifted;
          if (grad) {
            for (int f = 0; f < h; ++f) {
              (*grad)[lam0 + f] +=
                  gfac * (obs.normals[f].dot({xk[0], xk[1]}) - obs.offsets[f]);
            }
            for (int j = 0; j < 4; ++j) (*grad)[mu0 + j] += gfac * -g_[j];
            (*grad)[s0] += gfac;
            if (k >= 1) {
              (*grad)[lay_.state_off(k)] += gfac * n.x;
              (*grad)[lay_.state_off(k) + 1] += gfac * n.y;
            }
          }
        } else {
          out.phi += -yh * yh / (2.0 * rho);
        }

        // Stationarity G^T mu + R^T A^T lambda = 0.
        const Vec2 rt_n = {cps * n.x + sps * n.y, -sps * n.x + cps * n.y};
        const double st_x = z[mu0] - z[mu0 + 1] + rt_n.x;
        const double st_y = z[mu0 + 2] - z[mu0 + 3] + rt_n.y;
        const double rSx = add_eq(st_x, mult_.stat[2 * km]);
        const double rSy = add_eq(st_y, mult_.stat[2 * km + 1]);
        if (grad) {
          (*grad)[mu0] += rSx;
          (*grad)[mu0 + 1] -= rSx;
          (*grad)[mu0 + 2] += rSy;
          (*grad)[mu0 + 3] -= rSy;
          for (int f = 0; f < h; ++f) {
            const Vec2& af = obs.normals[f];
            (*grad)[lam0 + f] += rSx * (cps * af.x + sps * af.y) +
                                 rSy * (-sps * af.x + cps * af.y);
          }
          if (k >= 1) {
            // d(R^T n)/dpsi
            const double dx = -sps * n.x + cps * n.y;
            const double dy = -cps * n.x - sps * n.y;
            (*grad)[lay_.state_off(k) + 3] += rSx * dx + rSy * dy;
          }
        }

        // |A^T lambda| = 1.
        const double nn = std::max(n.norm(), 1e-12);
        const double rN = add_eq(nn - 1.0, mult_.norm[km]);
        if (grad) {
          for (int f = 0; f < h; ++f) {
            (*grad)[lam0 + f] += rN * obs.normals[f].dot(n) / nn;
          }
        }
      }
    }
    return out;
  }

  void update_multipliers(const std::vector<double>& z) {
    const double dt = p_.t_s;
    const double L = p_.vehicle.wheelbase;
    for (int k = 0; k <= lay_.N; ++k) {
      const auto xk = state(z, k);
      const auto xk1 = state(z, k + 1);
      const int uoff = lay_.control_off(k);
      const double a = z[uoff];
      const double delta = z[uoff + 1];
      mult_.dyn[4 * k + 0] += rho * (xk1[0] - (xk[0] + xk[2] * std::cos(xk[3]) * dt));
      mult_.dyn[4 * k + 1] += rho * (xk1[1] - (xk[1] + xk[2] * std::sin(xk[3]) * dt));
      mult_.dyn[4 * k + 2] += rho * (xk1[2] - (xk[2] + a * dt));
      mult_.dyn[4 * k + 3] +=
          rho * (xk1[3] - (xk[3] + xk[2] * std::tan(delta) / L * dt));
      for (int m = 0; m < lay_.M; ++m) {
        const auto& obs = p_.obstacles[m];
        const int lam0 = lay_.lam_off(k, m);
        const int mu0 = lay_.mu_off(k, m);
        const int h = lay_.faces[m];
        const int km = k * lay_.M + m;
        Vec2 n;
        double support = 0.0;
        for (int f = 0; f < h; ++f) {
          n = n + obs.normals[f] * z[lam0 + f];
          support += z[lam0 + f] *
                     (obs.normals[f].dot({xk[0], xk[1]}) - obs.offsets[f]);
        }
        const double g_mu = g_[0] * z[mu0] + g_[1] * z[mu0 + 1] +
                            g_[2] * z[mu0 + 2] + g_[3] * z[mu0 + 3];
        const double c_m = -g_mu + support + z[lay_.s_off(k, m)] -
                           p_.min_separation;
        mult_.margin[km] = std::max(0.0, mult_.margin[km] - rho * c_m);
        const double cps = std::cos(xk[3]);
        const double sps = std::sin(xk[3]);
        mult_.stat[2 * km] += rho * (z[mu0] - z[mu0 + 1] + cps * n.x + sps * n.y);
        mult_.stat[2 * km + 1] +=
            rho * (z[mu0 + 2] - z[mu0 + 3] - sps * n.x + cps * n.y);
        mult_.norm[km] += rho * (n.norm() - 1.0);
      }
    }
  }

  const Layout& layout() const { return lay_; }
  const BodyPolytope& body() const { return body_; }

 private:
  const ParkingProblem& p_;
  Layout lay_;
  BodyPolytope body_;
  std::array<double, 4> g_{};
  std::vector<std::array<double, 4>> x_ref_;
  Multipliers mult_;
};

struct InnerResult {
  double pgnorm = 0.0;
  int iterations = 0;
};

// Spectral projected gradient with nonmonotone Armijo backtracking.
InnerResult inner_solve(const AugLag& al, std::vector<double>& z,
                        double tol, int max_iter) {
  InnerResult res;
  const std::size_t n = z.size();
  std::vector<double> grad(n), trial(n), d(n);
  std::vector<double> phi_hist;

  auto eval = al.eval(z, &grad);
  double phi = eval.phi;
  phi_hist.push_back(phi);

  double alpha = 1.0;
  double g_inf = 0.0;
  for (double g : grad) g_inf = std::max(g_inf, std::abs(g));
  if (g_inf > 0.0) alpha = std::min(1.0, 1.0 / g_inf);

  std::vector<double> z_prev(n), grad_prev(n);
  for (int it = 0; it < max_iter; ++it) {
    // Projected-gradient stationarity measure at unit step.
    double pgnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] - grad[i];
    al.project(trial);
    for (std::size_t i = 0; i < n; ++i) {
      pgnorm = std::max(pgnorm, std::abs(trial[i] - z[i]));
    }
    res.pgnorm = pgnorm;
    if (pgnorm <= tol) break;
    ++res.iterations;

    for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] - alpha * grad[i];
    al.project(trial);
    double gd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = trial[i] - z[i];
      gd += grad[i] * d[i];
    }
    if (gd >= 0.0) {
      alpha *= 0.1;
      if (alpha < 1e-14) break;
      continue;
    }

    const double phi_ref = *std::max_element(phi_hist.begin(), phi_hist.end());
    double t = 1.0;
    double phi_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] + t * d[i];
      phi_new = al.eval(trial, nullptr).phi;
      if (phi_new <= phi_ref + 1e-4 * t * gd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    z_prev = z;
    grad_prev = grad;
    z = trial;
    eval = al.eval(z, &grad);
    phi = eval.phi;
    phi_hist.push_back(phi);
    if (phi_hist.size() > 10) phi_hist.erase(phi_hist.begin());

    // Barzilai-Borwein step for the next iteration.
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = z[i] - z_prev[i];
      ss += s * s;
      sy += s * (grad[i] - grad_prev[i]);
    }
    alpha = sy > 1e-18 ? std::clamp(ss / sy, 1e-10, 1e6) : alpha * 2.0;
  }
  return res;
}

struct SolveSetup {
  Layout lay;
  std::unique_ptr<AugLag> al;
  std::vector<double> z;
};

SolveSetup make_setup(const ParkingProblem& problem,
                      const Trajectory& initial_guess) {
  const int N = problem.horizon;
  if (N < 2) throw DomainError("solve_parking: horizon must be >= 2");
  const std::size_t n_states = initial_guess.states.size();
  if (n_states != static_cast<std::size_t>(N + 1) &&
      n_states != static_cast<std::size_t>(N + 2)) {
    throw DomainError("solve_parking: guess state count does not match horizon");
  }
  if (std::abs(initial_guess.t_s - problem.t_s) > 1e-9) {
    throw DomainError("solve_parking: guess t_s does not match problem");
  }

  SolveSetup setup;
  setup.lay = make_layout(problem);
  const Layout& lay = setup.lay;

  // Continuous (unwrapped) headings along the guess.
  std::vector<std::array<double, 4>> guess_states(N + 2);
  double psi = problem.x_start.psi;
  guess_states[0] = {problem.x_start.x, problem.x_start.y, problem.x_start.v,
                     problem.x_start.psi};
  for (int k = 1; k <= N + 1; ++k) {
    const VehicleState& gs =
        initial_guess.states[std::min<std::size_t>(k, n_states - 1)];
    psi += angle_diff(gs.psi, normalize_angle(psi));
    guess_states[k] = {gs.x, gs.y, gs.v, psi};
  }
  // Terminal state pinned to x_F on the same heading branch.
  const double psi_end = guess_states[N + 1][3];
  const double psi_f =
      problem.x_final.psi +
      2.0 * M_PI * std::round((psi_end - problem.x_final.psi) / (2.0 * M_PI));
  guess_states[N + 1] = {problem.x_final.x, problem.x_final.y,
                         problem.x_final.v, psi_f};

  std::vector<std::array<double, 4>> x_ref(guess_states.begin(),
                                           guess_states.begin() + N + 1);
  setup.al = std::make_unique<AugLag>(problem, lay, x_ref);
  AugLag& al = *setup.al;
  al.x0 = guess_states[0];
  al.xF = guess_states[N + 1];

  std::vector<double>& z = setup.z;
  z.assign(lay.n_vars, 0.0);
  for (int k = 1; k <= N; ++k) {
    for (int i = 0; i < 4; ++i) z[lay.state_off(k) + i] = guess_states[k][i];
  }
  for (int k = 0; k <= N; ++k) {
    const ControlCommand u = k < static_cast<int>(initial_guess.controls.size())
                                 ? initial_guess.controls[k]
                                 : ControlCommand{};
    z[lay.control_off(k)] = u.a;
    z[lay.control_off(k) + 1] = u.delta;
  }
  const BodyPolytope body = al.body();
  for (int k = 0; k <= N; ++k) {
    const auto xs = guess_states[k];
    const VehicleState vs{xs[0], xs[1], xs[2], normalize_angle(xs[3])};
    for (int m = 0; m < lay.M; ++m) {
      const PairDuals pd =
          optimize_pair_duals(vs, problem.obstacles[m], body, problem.vehicle);
      for (int f = 0; f < lay.faces[m]; ++f) {
        z[lay.lam_off(k, m) + f] = pd.lambda[f];
      }
      for (int j = 0; j < 4; ++j) z[lay.mu_off(k, m) + j] = pd.mu[j];
      z[lay.s_off(k, m)] = std::max(0.0, problem.min_separation - pd.margin);
    }
  }
  al.project(z);
  return setup;
}

}  // namespace

double solver_gradient_check(const ParkingProblem& problem,
                             const Trajectory& initial_guess, unsigned seed,
                             int probes) {
  SolveSetup setup = make_setup(problem, initial_guess);
  AugLag& al = *setup.al;
  al.rho = 25.0;
  std::vector<double>& z = setup.z;

  // Perturb into the interior so box/cone projections are inactive and
  // kinks of the PHR term are avoided at the probe point.
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(0.01, 0.05);
  for (double& v : z) v += jitter(rng);

  std::vector<double> grad(z.size());
  al.eval(z, &grad);

  std::uniform_int_distribution<std::size_t> pick(0, z.size() - 1);
  const double h = 1e-6;
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const std::size_t i = pick(rng);
    const double saved = z[i];
    z[i] = saved + h;
    const double above = al.eval(z, nullptr).phi;
    z[i] = saved - h;
    const double below = al.eval(z, nullptr).phi;
    z[i] = saved;
    const double fd = (above - below) / (2.0 * h);
    const double denom = std::max({std::abs(fd), std::abs(grad[i]), 1.0});
    worst = std::max(worst, std::abs(fd - grad[i]) / denom);
  }
  return worst;
}

OptimizedTrajectory solve_parking(const ParkingProblem& problem,
                                  const Trajectory& initial_guess,
                                  const SolverConfig& cfg) {
  const int N = problem.horizon;
  SolveSetup setup = make_setup(problem, initial_guess);
  const Layout& lay = setup.lay;
  AugLag& al = *setup.al;
  al.rho = cfg.rho0;
  std::vector<double>& z = setup.z;

  auto assemble = [&](const std::vector<double>& zz, SolveReport report) {
    OptimizedTrajectory traj;
    traj.states.resize(N + 2);
    for (int k = 0; k <= N + 1; ++k) {
      const auto xs = al.state(zz, k);
      traj.states[k] = {xs[0], xs[1], xs[2], normalize_angle(xs[3])};
    }
    traj.controls.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
      traj.controls[k] = {zz[lay.control_off(k)], zz[lay.control_off(k) + 1]};
    }
    traj.duals.lambda.resize(N + 1);
    traj.duals.mu.resize(N + 1);
    traj.duals.s.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
      traj.duals.lambda[k].resize(lay.M);
      traj.duals.mu[k].resize(lay.M);
      traj.duals.s[k].resize(lay.M);
      for (int m = 0; m < lay.M; ++m) {
        traj.duals.lambda[k][m].assign(
            zz.begin() + lay.lam_off(k, m),
            zz.begin() + lay.lam_off(k, m) + lay.faces[m]);
        for (int j = 0; j < 4; ++j) {
          traj.duals.mu[k][m][j] = zz[lay.mu_off(k, m) + j];
        }
        traj.duals.s[k][m] = zz[lay.s_off(k, m)];
      }
    }
    traj.report = report;
    return traj;
  };

  SolveReport report;
  double v_prev = std::numeric_limits<double>::infinity();
  double best_violation = std::numeric_limits<double>::infinity();
  std::vector<double> best_z = z;
  double inner_tol = 1e-2;

  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    const InnerResult inner = inner_solve(al, z, inner_tol, cfg.max_inner);
    report.inner_iterations += inner.iterations;
    report.outer_iterations = outer + 1;

    const auto eval = al.eval(z, nullptr);
    report.max_violation = eval.max_violation;
    report.first_order_residual = inner.pgnorm;
    report.objective = eval.objective;
    if (eval.max_violation < best_violation) {
      best_violation = eval.max_violation;
      best_z = z;
    }
    if (eval.max_violation <= cfg.eps_con && inner.pgnorm <= cfg.eps_opt) {
      report.converged = true;
      return assemble(z, report);
    }

    al.update_multipliers(z);
    if (eval.max_violation > 0.25 * v_prev) {
      al.rho = std::min(al.rho * cfg.rho_growth, cfg.rho_max);
    }
    v_prev = eval.max_violation;
    inner_tol = std::max(cfg.eps_opt * 0.3, inner_tol * 0.5);
  }

  report.max_violation = best_violation;
  if (best_violation > cfg.eps_con) {
    throw Infeasible(assemble(best_z, report), best_violation);
  }
  return assemble(best_z, report);
}

VerifyReport verify_trajectory(const OptimizedTrajectory& traj,
                               const ParkingProblem& problem) {
  VerifyReport report;
  const auto& veh = problem.vehicle;
  const int interpolants = 4;
  const std::size_t n = traj.states.size();

  for (std::size_t k = 0; k < n && report.collision_free; ++k) {
    const int sub_steps = (k + 1 < n) ? interpolants + 1 : 1;
    for (int j = 0; j < sub_steps; ++j) {
      const VehicleState state =
          j == 0 ? traj.states[k]
                 : interpolate_state(traj.states[k], traj.states[k + 1],
                                     static_cast<double>(j) / (interpolants + 1));
      const Polygon body = footprint(state, veh);
      for (const auto& obs : problem.obstacles) {
        if (convex_polygons_intersect(body, obs.vertices)) {
          report.collision_free = false;
          report.first_collision_knot = static_cast<int>(k);
          break;
        }
      }
      if (!report.collision_free) break;
    }
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const VehicleState pred =
        step(traj.states[k], traj.controls[k], problem.t_s, veh);
    const VehicleState& actual = traj.states[k + 1];
    const double defect = std::max(
        {std::abs(actual.x - pred.x), std::abs(actual.y - pred.y),
         std::abs(actual.v - pred.v),
         std::abs(angle_diff(actual.psi, pred.psi))});
    report.max_dynamics_defect = std::max(report.max_dynamics_defect, defect);
  }

  const VehicleState& last = traj.states.back();
  report.terminal_position_error = std::hypot(last.x - problem.x_final.x,
                                              last.y - problem.x_final.y);
  report.terminal_heading_error =
      std::abs(angle_diff(last.psi, problem.x_final.psi));

  for (const auto& s : traj.states) {
    if (std::abs(s.v) > veh.v_max + 1e-9) report.bounds_ok = false;
  }
  for (const auto& u : traj.controls) {
    if (std::abs(u.a) > veh.a_max + 1e-9 ||
        std::abs(u.delta) > veh.delta_max + 1e-9) {
      report.bounds_ok = false;
    }
  }
  return report;
}

}  // namespace parkplan
