#include "steklov/oracles.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace steklov {

double separation_eigenvalue(const std::function<double(double)>& r, double depth, int j, MixedKind kind, int steps) {
  if (!(depth > 0.0) || steps < 1 || j < 0) throw InvalidArgument("bad separation problem");
  const double jj = double(j) * j;
  // y = (phi, psi) with psi = r phi'
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    const double rt = r(t);
    return std::array<double, 2>{y[1] / rt, jj / rt * y[0]};
  };
  std::array<double, 2> y = kind == MixedKind::Neumann ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, -1.0};
  const double dt = -depth / steps;
  double t = depth;
  for (int i = 0; i < steps; ++i) {
    const auto k1 = rhs(t, y);
    const auto k2 = rhs(t + 0.5 * dt, {y[0] + 0.5 * dt * k1[0], y[1] + 0.5 * dt * k1[1]});
    const auto k3 = rhs(t + 0.5 * dt, {y[0] + 0.5 * dt * k2[0], y[1] + 0.5 * dt * k2[1]});
    const auto k4 = rhs(t + dt, {y[0] + dt * k3[0], y[1] + dt * k3[1]});
    y[0] += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    t = depth + (i + 1) * dt;
    // keep the magnitude bounded; only the ratio matters
    const double m = std::max(std::abs(y[0]), std::abs(y[1]));
    if (m > 1e100) {
      y[0] /= m;
      y[1] /= m;
    }
  }
  // outward normal at t = 0 is -d/dt
  return -y[1] / (r(0.0) * y[0]);
}

std::vector<double> separation_spectrum(const std::function<double(double)>& r, double depth, MixedKind kind, int k,
                                        int steps) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  std::vector<double> v{separation_eigenvalue(r, depth, 0, kind, steps)};
  for (int j = 1; static_cast<int>(v.size()) < k + 3; ++j) {
    const double s = separation_eigenvalue(r, depth, j, kind, steps);
    v.push_back(s);
    v.push_back(s);
  }
  std::sort(v.begin(), v.end());
  v.resize(k + 1);
  return v;
}

double collar_energy_quadrature(double l, double h) {
  if (!(l > 0.0) || !(h > 0.0)) throw InvalidArgument("l and h must be positive");
  SurfaceSpec spec{HyperbolicCollar{l, true}};
  const MetricSurface surface = build_surface(spec);
  const TriMesh mesh = triangulate(surface, h);
  const double norm = std::atan(1.0 / std::sinh(0.5 * l));
  // Dunavant degree 5: barycentric points and weights summing to 1.
  struct Point {
    double l0, l1, l2, w;
  };
  const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
  const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
  const std::array<Point, 7> rule{{{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
                                   {a1, b1, b1, w1},
                                   {b1, a1, b1, w1},
                                   {b1, b1, a1, w1},
                                   {a2, b2, b2, w2},
                                   {b2, a2, b2, w2},
                                   {b2, b2, a2, w2}}};
  double energy = 0.0;
  for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
    const auto& p = mesh.corners(tri);
    const double area = mesh.chart_area(tri);
    double sum = 0.0;
    for (const auto& q : rule) {
      const Eigen::Vector2d x = q.l0 * p[0] + q.l1 * p[1] + q.l2 * p[2];
      const Metric2 g = surface.metric(x.x(), x.y());
      const double dphi = 1.0 / (std::cosh(x.y()) * norm); // d/dt of arctan(sinh t)
      sum += q.w * g.inverse().g22 * dphi * dphi * std::sqrt(g.det());
    }
    energy += area * sum;
  }
  return energy;
}

std::array<double, 2> neck_interval(const MetricSurface& surface) {
  const RadiusProfile* profile = surface.profile();
  if (!profile) throw InvalidArgument("neck interval needs a surface of revolution");
  const ProfilePiece* best = nullptr;
  for (const auto& piece : profile->pieces())
    if (piece.kind == ProfilePiece::Kind::Constant && (!best || piece.c0 < best->c0)) best = &piece;
  if (!best) throw InvalidArgument("surface has no flat piece");
  return {best->t0, best->t1};
}

Eigen::VectorXd thin_neck_test_function(const MetricSurface& surface, const TriMesh& mesh) {
  const auto [t0, t1] = neck_interval(surface);
  Eigen::VectorXd f(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const double t = mesh.vertices()[v].y();
    if (t <= t0) f[v] = -1.0;
    else if (t >= t1) f[v] = 1.0;
    else f[v] = -1.0 + 2.0 * (t - t0) / (t1 - t0);
  }
  return f;
}

} // namespace steklov
