#include "steklov/cheeger.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace steklov {
namespace {

// Incremental union-find that counts components and those touching the boundary.
class Components {
public:
  explicit Components(const std::vector<char>& on_boundary)
      : parent_(on_boundary.size(), -1), boundary_(on_boundary), has_boundary_(on_boundary.size(), 0) {}

  void add(int v) {
    parent_[v] = v;
    has_boundary_[v] = boundary_[v];
    ++count_;
    if (boundary_[v]) ++touching_;
  }
  bool added(int v) const { return parent_[v] >= 0; }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    if (has_boundary_[a] && has_boundary_[b]) --touching_;
    has_boundary_[a] = has_boundary_[a] || has_boundary_[b];
    parent_[b] = a;
    --count_;
  }
  int count() const { return count_; }
  int without_boundary() const { return count_ - touching_; }
  bool any_boundary() const { return touching_ > 0; }

private:
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  std::vector<int> parent_;
  const std::vector<char>& boundary_;
  std::vector<char> has_boundary_;
  int count_ = 0;
  int touching_ = 0;
};

struct Adjacency {
  std::vector<int> ptr, adj;
};

Adjacency adjacency(const TriMesh& mesh) {
  const auto edges = mesh.edges();
  Adjacency a;
  a.ptr.assign(mesh.vertex_count() + 1, 0);
  for (const auto& [i, j] : edges) {
    ++a.ptr[i + 1];
    ++a.ptr[j + 1];
  }
  std::partial_sum(a.ptr.begin(), a.ptr.end(), a.ptr.begin());
  a.adj.resize(a.ptr.back());
  std::vector<int> fill(a.ptr.begin(), a.ptr.end() - 1);
  for (const auto& [i, j] : edges) {
    a.adj[fill[i]++] = j;
    a.adj[fill[j]++] = i;
  }
  return a;
}

// Area fraction of a P1 triangle where the interpolant exceeds t.
double superlevel_fraction(double v0, double v1, double v2, double t) {
  double a = v0, b = v1, c = v2;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  if (t >= c) return 0.0;
  if (t <= a) return 1.0;
  if (t >= b) return (c - t) * (c - t) / ((c - a) * (c - b));
  return 1.0 - (t - a) * (t - a) / ((b - a) * (c - a));
}

double level_segment_length(const TriMesh& mesh, int tri, const double* v, double t) {
  const auto& p = mesh.corners(tri);
  Eigen::Vector2d pts[2];
  int n = 0;
  for (int e = 0; e < 3 && n < 2; ++e) {
    const int i = e, j = (e + 1) % 3;
    if ((v[i] - t) * (v[j] - t) < 0.0) pts[n++] = p[i] + (t - v[i]) / (v[j] - v[i]) * (p[j] - p[i]);
  }
  if (n < 2) return 0.0;
  const Eigen::Vector2d d = pts[1] - pts[0];
  return std::sqrt(mesh.metric(tri).norm2(d.x(), d.y()));
}

double edge_fraction(double a, double b, double t) {
  if (a > t && b > t) return 1.0;
  if (a <= t && b <= t) return 0.0;
  return a > t ? (a - t) / (a - b) : (b - t) / (b - a);
}

// Midpoints between consecutive groups of vertex values. Values closer than
// 1e-12 of the range form one group, so round-off scatter of values that are
// equal in exact arithmetic (a grid row, mirror images) makes no thresholds.
std::vector<double> group_midpoints(const Eigen::VectorXd& u) {
  std::vector<double> v(u.data(), u.data() + u.size());
  std::sort(v.begin(), v.end());
  const double tol = 1e-12 * (v.back() - v.front());
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (v[k + 1] - v[k] <= tol) continue;
    const double m = 0.5 * (v[k] + v[k + 1]);
    if (v[k] < m && m < v[k + 1]) out.push_back(m);
  }
  return out;
}

std::vector<char> boundary_mask(const TriMesh& mesh) {
  std::vector<char> m(mesh.vertex_count(), 0);
  for (const auto& e : mesh.boundary_edges()) m[e.v0] = m[e.v1] = 1;
  return m;
}

void check_input(const TriMesh& mesh, const Eigen::VectorXd& u) {
  if (u.size() != mesh.vertex_count()) throw InvalidArgument("vertex function has the wrong size");
  if (!u.allFinite()) throw InvalidArgument("vertex function is not finite");
  if (!(u.maxCoeff() > u.minCoeff())) throw InvalidArgument("vertex function is constant");
}

LevelSetSweep sweep_oriented(const TriMesh& mesh, const Eigen::VectorXd& u, const std::vector<double>& tri_area,
                             double total_area, bool flipped) {
  const int nt = mesh.triangle_count();
  const int nv = mesh.vertex_count();
  const auto& tris = mesh.triangles();
  LevelSetSweep out;
  out.total_area = total_area;
  out.flipped = flipped;

  std::vector<double> thresholds;
  for (double m : group_midpoints(u))
    if (m >= 0.0) thresholds.push_back(m);
  out.records.resize(thresholds.size());
  for (std::size_t k = 0; k < thresholds.size(); ++k) out.records[k].t = thresholds[k];
  if (thresholds.empty()) return out;

  // Per-triangle and per-edge value ranges.
  std::vector<double> tmin(nt), tmax(nt);
  for (int t = 0; t < nt; ++t) {
    const double a = u[tris[t][0]], b = u[tris[t][1]], c = u[tris[t][2]];
    tmin[t] = std::min({a, b, c});
    tmax[t] = std::max({a, b, c});
  }
  std::vector<int> by_max(nt), by_min(nt);
  std::iota(by_max.begin(), by_max.end(), 0);
  std::iota(by_min.begin(), by_min.end(), 0);
  std::sort(by_max.begin(), by_max.end(), [&](int x, int y) { return tmax[x] > tmax[y] || (tmax[x] == tmax[y] && x < y); });
  std::sort(by_min.begin(), by_min.end(), [&](int x, int y) { return tmin[x] > tmin[y] || (tmin[x] == tmin[y] && x < y); });

  const auto& bedges = mesh.boundary_edges();
  const int ne = static_cast<int>(bedges.size());
  std::vector<double> emin(ne), emax(ne);
  for (int e = 0; e < ne; ++e) {
    emin[e] = std::min(u[bedges[e].v0], u[bedges[e].v1]);
    emax[e] = std::max(u[bedges[e].v0], u[bedges[e].v1]);
  }
  std::vector<int> e_by_max(ne), e_by_min(ne);
  std::iota(e_by_max.begin(), e_by_max.end(), 0);
  std::iota(e_by_min.begin(), e_by_min.end(), 0);
  std::sort(e_by_max.begin(), e_by_max.end(), [&](int x, int y) { return emax[x] > emax[y] || (emax[x] == emax[y] && x < y); });
  std::sort(e_by_min.begin(), e_by_min.end(), [&](int x, int y) { return emin[x] > emin[y] || (emin[x] == emin[y] && x < y); });

  const auto bmask = boundary_mask(mesh);
  const Adjacency adj = adjacency(mesh);
  std::vector<int> vorder(nv);
  std::iota(vorder.begin(), vorder.end(), 0);
  std::sort(vorder.begin(), vorder.end(), [&](int x, int y) { return u[x] > u[y] || (u[x] == u[y] && x < y); });

  // Descending pass: areas, perimeters, traces and components of {u > t}.
  Components up(bmask);
  std::vector<int> active, eactive;
  std::size_t pmax = 0, pmin = 0, qmax = 0, qmin = 0, pv = 0;
  double full_area = 0.0, full_trace = 0.0;
  for (std::size_t k = thresholds.size(); k-- > 0;) {
    const double t = thresholds[k];
    while (pmax < by_max.size() && tmax[by_max[pmax]] > t) active.push_back(by_max[pmax++]);
    while (pmin < by_min.size() && tmin[by_min[pmin]] > t) full_area += tri_area[by_min[pmin++]];
    while (qmax < e_by_max.size() && emax[e_by_max[qmax]] > t) eactive.push_back(e_by_max[qmax++]);
    while (qmin < e_by_min.size() && emin[e_by_min[qmin]] > t) full_trace += bedges[e_by_min[qmin++]].length;
    while (pv < vorder.size() && u[vorder[pv]] > t) {
      const int v = vorder[pv++];
      up.add(v);
      for (int q = adj.ptr[v]; q < adj.ptr[v + 1]; ++q)
        if (up.added(adj.adj[q])) up.unite(v, adj.adj[q]);
    }
    auto& rec = out.records[k];
    double partial = 0.0, perim = 0.0;
    std::size_t keep = 0;
    for (int tri : active) {
      if (tmin[tri] > t) continue;
      active[keep++] = tri;
      const double vals[3] = {u[tris[tri][0]], u[tris[tri][1]], u[tris[tri][2]]};
      partial += tri_area[tri] * superlevel_fraction(vals[0], vals[1], vals[2], t);
      perim += level_segment_length(mesh, tri, vals, t);
    }
    active.resize(keep);
    double trace_partial = 0.0;
    keep = 0;
    for (int e : eactive) {
      if (emin[e] > t) continue;
      eactive[keep++] = e;
      trace_partial += bedges[e].length * edge_fraction(u[bedges[e].v0], u[bedges[e].v1], t);
    }
    eactive.resize(keep);
    rec.area = full_area + partial;
    rec.perimeter = perim;
    rec.trace = full_trace + trace_partial;
    rec.components = up.count();
    rec.interior_components = up.without_boundary();
  }

  // Ascending pass: components of the complement {u < t}.
  Components down(bmask);
  std::size_t pa = nv;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    const double t = thresholds[k];
    while (pa > 0 && u[vorder[pa - 1]] < t) {
      const int v = vorder[--pa];
      down.add(v);
      for (int q = adj.ptr[v]; q < adj.ptr[v + 1]; ++q)
        if (down.added(adj.adj[q])) down.unite(v, adj.adj[q]);
    }
    auto& rec = out.records[k];
    rec.complement_components = down.count();
    rec.complement_touches_boundary = down.any_boundary();
    rec.admissible = rec.area <= 0.5 * out.total_area * (1.0 + 1e-12) && rec.trace > 0.0 &&
                     rec.complement_components == 1 && rec.complement_touches_boundary && rec.perimeter > 0.0;
  }
  return out;
}

double best_ratio_product(const LevelSetSweep& sweep) {
  double h1 = std::numeric_limits<double>::infinity(), h2 = h1;
  for (const auto& r : sweep.records) {
    if (!r.admissible) continue;
    if (r.area > 0.0) h1 = std::min(h1, r.perimeter / r.area);
    if (r.trace > 0.0) h2 = std::min(h2, r.perimeter / r.trace);
  }
  return h1 * h2;
}

} // namespace

LevelSetSweep level_set_sweep(const TriMesh& mesh, const Eigen::VectorXd& u) {
  check_input(mesh, u);
  const int nt = mesh.triangle_count();
  const auto& tris = mesh.triangles();
  std::vector<double> tri_area(nt);
  for (int t = 0; t < nt; ++t) tri_area[t] = mesh.area(t);
  const double total = std::accumulate(tri_area.begin(), tri_area.end(), 0.0);

  double positive = 0.0, negative = 0.0;
  for (int t = 0; t < nt; ++t) {
    const double a = u[tris[t][0]], b = u[tris[t][1]], c = u[tris[t][2]];
    positive += tri_area[t] * superlevel_fraction(a, b, c, 0.0);
    negative += tri_area[t] * superlevel_fraction(-a, -b, -c, 0.0);
  }
  // Odd eigenfunctions split the area evenly; then either sign is allowed
  // and roundoff must not pick one, so keep the sharper sweep.
  const double half = 0.5 * total * (1.0 + 1e-9);
  if (positive <= half && negative <= half) {
    LevelSetSweep plus = sweep_oriented(mesh, u, tri_area, total, false);
    LevelSetSweep minus = sweep_oriented(mesh, -u, tri_area, total, true);
    return best_ratio_product(minus) < best_ratio_product(plus) ? minus : plus;
  }
  if (positive > 0.5 * total) return sweep_oriented(mesh, -u, tri_area, total, true);
  return sweep_oriented(mesh, u, tri_area, total, false);
}

CheegerEstimate cheeger_estimate(const LevelSetSweep& sweep) {
  CheegerEstimate est;
  est.h1 = est.h2 = std::numeric_limits<double>::infinity();
  for (const auto& r : sweep.records) {
    if (!r.admissible) continue;
    ++est.admissible;
    if (r.area > 0.0 && r.perimeter / r.area < est.h1) {
      est.h1 = r.perimeter / r.area;
      est.t_h1 = r.t;
    }
    if (r.trace > 0.0 && r.perimeter / r.trace < est.h2) {
      est.h2 = r.perimeter / r.trace;
      est.t_h2 = r.t;
    }
  }
  if (est.admissible == 0 || !std::isfinite(est.h1) || !std::isfinite(est.h2))
    throw InvalidArgument("level-set sweep has no admissible threshold");
  est.bound = est.h1 * est.h2 / 4.0;
  return est;
}

MaxPrincipleReport max_principle_check(const TriMesh& mesh, const Eigen::VectorXd& u) {
  check_input(mesh, u);
  const int nv = mesh.vertex_count();
  const auto bmask = boundary_mask(mesh);
  const Adjacency adj = adjacency(mesh);
  std::vector<int> vorder(nv);
  std::iota(vorder.begin(), vorder.end(), 0);
  std::sort(vorder.begin(), vorder.end(), [&](int x, int y) { return u[x] > u[y] || (u[x] == u[y] && x < y); });
  const std::vector<double> thresholds = group_midpoints(u);
  const std::size_t m = thresholds.size();
  std::vector<char> bad(m, 0);
  {
    Components up(bmask);
    std::size_t pv = 0;
    for (std::size_t k = m; k-- > 0;) {
      const double t = thresholds[k];
      while (pv < vorder.size() && u[vorder[pv]] > t) {
        const int v = vorder[pv++];
        up.add(v);
        for (int q = adj.ptr[v]; q < adj.ptr[v + 1]; ++q)
          if (up.added(adj.adj[q])) up.unite(v, adj.adj[q]);
      }
      if (up.without_boundary() > 0) bad[k] = 1;
    }
  }
  {
    Components down(bmask);
    std::size_t pa = nv;
    for (std::size_t k = 0; k < m; ++k) {
      const double t = thresholds[k];
      while (pa > 0 && u[vorder[pa - 1]] < t) {
        const int v = vorder[--pa];
        down.add(v);
        for (int q = adj.ptr[v]; q < adj.ptr[v + 1]; ++q)
          if (down.added(adj.adj[q])) down.unite(v, adj.adj[q]);
      }
      if (down.without_boundary() > 0) bad[k] = 1;
    }
  }
  MaxPrincipleReport rep;
  rep.thresholds = m;
  rep.violations = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
  return rep;
}

void write_sweep_csv(std::ostream& out, const LevelSetSweep& sweep) {
  const auto old = out.precision(17);
  out << "t,perimeter,area,trace,admissible\n";
  for (const auto& r : sweep.records)
    out << r.t << ',' << r.perimeter << ',' << r.area << ',' << r.trace << ',' << (r.admissible ? 1 : 0) << '\n';
  out.precision(old);
}

} // namespace steklov
