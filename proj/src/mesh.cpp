#include "steklov/mesh.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>

namespace steklov {
namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Row spacing h * max(1, gamma * d / r) at distance d from the nearer end of a
// flat piece of radius r; rows are equidistributed in the cumulative density.
void graded_rows(double p, double q, double h, double r, double gamma, std::vector<double>& out) {
  const double len = q - p;
  const double half = 0.5 * len;
  const double dstar = gamma > 0.0 ? r / gamma : std::numeric_limits<double>::infinity();
  if (half <= dstar) {
    const int n = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
    for (int k = 1; k < n; ++k) out.push_back(p + len * k / n);
    out.push_back(q);
    return;
  }
  const double slope = gamma * h / r;
  auto F = [&](double d) { return d <= dstar ? d / h : dstar / h + std::log(d / dstar) / slope; };
  auto Finv = [&](double y) { return y <= dstar / h ? y * h : dstar * std::exp((y - dstar / h) * slope); };
  const double fh = F(half);
  const double total = 2.0 * fh;
  const int n = std::max(1, static_cast<int>(std::ceil(total - 1e-9)));
  for (int k = 1; k < n; ++k) {
    const double y = total * k / n;
    out.push_back(y <= fh ? p + Finv(y) : q - Finv(total - y));
  }
  out.push_back(q);
}

struct BandRows {
  int first = 0; // index into the global rows
  int last = 0;
  int low_label = 0;
  int high_label = 1;
};

double resolve_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("mesh size h must be positive and finite");
  return h;
}

int angular_count(const MetricSurface& surface, double h) {
  const double n = std::ceil(surface.max_circumference() / h - 1e-9);
  if (!(n >= 8.0)) throw InvalidArgument("mesh size h too large: fewer than 8 vertices on a boundary circle");
  if (n > 1e8) throw InvalidArgument("mesh size h too small");
  return static_cast<int>(n);
}

std::size_t vertex_cap(const MeshOptions& options) {
  return options.max_vertices > 0 ? options.max_vertices : default_max_vertices();
}

TriMesh build(const MetricSurface& surface, double h, const std::vector<double>& rows, const std::vector<BandRows>& bands,
              const MeshOptions& options) {
  const int ns = angular_count(surface, h);
  std::size_t nv = 0;
  for (const auto& b : bands) nv += static_cast<std::size_t>(b.last - b.first + 1) * ns;
  if (nv > vertex_cap(options))
    throw InvalidArgument("mesh would have " + std::to_string(nv) + " vertices, above the cap of " +
                          std::to_string(vertex_cap(options)));

  TriMeshData d;
  d.ns = ns;
  d.h = h;
  d.metric_scale = surface.scale();
  d.vertices.reserve(nv);
  d.vertex_row.reserve(nv);
  const double ds = kTwoPi / ns;
  auto s_of = [&](int i) { return i == ns ? kTwoPi : ds * i; };

  for (const auto& band : bands) {
    const int base = static_cast<int>(d.vertices.size());
    for (int r = band.first; r <= band.last; ++r) {
      for (int i = 0; i < ns; ++i) {
        d.vertices.emplace_back(s_of(i), rows[r]);
        d.vertex_row.push_back(r);
      }
    }
    auto vid = [&](int r, int i) { return base + (r - band.first) * ns + (i % ns); };
    for (int r = band.first; r < band.last; ++r) {
      const double t0 = rows[r], t1 = rows[r + 1];
      for (int i = 0; i < ns; ++i) {
        const Eigen::Vector2d p00(s_of(i), t0), p10(s_of(i + 1), t0), p01(s_of(i), t1), p11(s_of(i + 1), t1);
        d.triangles.push_back({vid(r, i), vid(r, i + 1), vid(r + 1, i + 1)});
        d.corners.push_back({p00, p10, p11});
        d.triangles.push_back({vid(r, i), vid(r + 1, i + 1), vid(r + 1, i)});
        d.corners.push_back({p00, p11, p01});
      }
    }
    for (int i = 0; i < ns; ++i) {
      const double tl = rows[band.first];
      d.boundary_edges.push_back(
          {vid(band.first, i), vid(band.first, i + 1), band.low_label, surface.arc_length(tl, s_of(i), s_of(i + 1))});
    }
    for (int i = 0; i < ns; ++i) {
      const double th = rows[band.last];
      d.boundary_edges.push_back(
          {vid(band.last, i + 1), vid(band.last, i), band.high_label, surface.arc_length(th, s_of(i), s_of(i + 1))});
    }
  }

  d.centroid_metric.reserve(d.triangles.size());
  for (const auto& c : d.corners) {
    const Eigen::Vector2d m = (c[0] + c[1] + c[2]) / 3.0;
    d.centroid_metric.push_back(surface.metric(m.x(), m.y()));
  }
  if (options.midpoint_metric) {
    d.midpoint_metric.reserve(d.triangles.size());
    for (const auto& c : d.corners) {
      std::array<Metric2, 3> g;
      for (int e = 0; e < 3; ++e) {
        const Eigen::Vector2d m = 0.5 * (c[e] + c[(e + 1) % 3]);
        g[e] = surface.metric(m.x(), m.y());
      }
      d.midpoint_metric.push_back(g);
    }
  }
  d.rows = rows;
  return TriMesh(std::move(d));
}

} // namespace

std::size_t default_max_vertices() {
  if (const char* env = std::getenv("STEKLOV_MAX_VERTICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

TriMesh::TriMesh(TriMeshData data) : d_(std::move(data)) { validate(); }

void TriMesh::validate() const {
  const std::size_t nt = d_.triangles.size();
  const int nv = vertex_count();
  if (nt == 0) throw InvalidArgument("mesh has no triangles");
  if (d_.corners.size() != nt || d_.centroid_metric.size() != nt)
    throw InvalidArgument("per-triangle arrays do not match the triangle count");
  if (!d_.midpoint_metric.empty() && d_.midpoint_metric.size() != nt)
    throw InvalidArgument("midpoint metric array does not match the triangle count");
  if (d_.vertex_row.size() != static_cast<std::size_t>(nv)) throw InvalidArgument("vertex row array has the wrong size");

  std::unordered_map<std::uint64_t, int> count;
  count.reserve(3 * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = d_.triangles[t];
    for (int v : tri)
      if (v < 0 || v >= nv) throw InvalidArgument("triangle " + std::to_string(t) + " references a missing vertex");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw InvalidArgument("triangle " + std::to_string(t) + " repeats a vertex");
    if (!(chart_area(static_cast<int>(t)) > 0.0))
      throw InvalidArgument("triangle " + std::to_string(t) + " is degenerate or inverted in the chart");
    if (!d_.centroid_metric[t].positive_definite() || !(area(static_cast<int>(t)) > 0.0))
      throw InvalidArgument("triangle " + std::to_string(t) + " has a singular metric sample");
    for (int e = 0; e < 3; ++e) ++count[edge_key(tri[e], tri[(e + 1) % 3])];
  }
  std::size_t open_edges = 0;
  for (const auto& [key, c] : count) {
    if (c > 2) throw InvalidArgument("mesh edge shared by more than two triangles");
    if (c == 1) ++open_edges;
  }
  for (const auto& be : d_.boundary_edges) {
    auto it = count.find(edge_key(be.v0, be.v1));
    if (it == count.end() || it->second != 1) throw InvalidArgument("boundary edge does not belong to exactly one triangle");
    if (!(be.length > 0.0)) throw InvalidArgument("boundary edge has non-positive length");
  }
  if (open_edges != d_.boundary_edges.size()) throw InvalidArgument("mesh has unlabeled boundary edges");
}

std::vector<int> TriMesh::boundary_labels() const {
  std::vector<int> out;
  for (const auto& e : d_.boundary_edges) out.push_back(e.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double TriMesh::boundary_length(int label) const {
  double sum = 0.0;
  for (const auto& e : d_.boundary_edges)
    if (e.label == label) sum += e.length;
  return sum;
}

double TriMesh::chart_area(int tri) const {
  const auto& c = d_.corners[tri];
  const Eigen::Vector2d a = c[1] - c[0], b = c[2] - c[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

double TriMesh::area(int tri) const {
  const double ca = chart_area(tri);
  if (has_midpoint_metric()) {
    double s = 0.0;
    for (const auto& g : d_.midpoint_metric[tri]) s += std::sqrt(g.det());
    return ca * s / 3.0;
  }
  return ca * std::sqrt(d_.centroid_metric[tri].det());
}

double TriMesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < triangle_count(); ++t) sum += area(t);
  return sum;
}

std::vector<std::pair<int, int>> TriMesh::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(3 * d_.triangles.size());
  for (const auto& tri : d_.triangles)
    for (int e = 0; e < 3; ++e) out.emplace_back(std::min(tri[e], tri[(e + 1) % 3]), std::max(tri[e], tri[(e + 1) % 3]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TriMesh TriMesh::scaled_metric(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scale factor must be positive");
  TriMeshData d = d_;
  const double c2 = c * c;
  for (auto& g : d.centroid_metric) g = g.scaled(c2);
  for (auto& gs : d.midpoint_metric)
    for (auto& g : gs) g = g.scaled(c2);
  for (auto& e : d.boundary_edges) e.length *= c;
  d.h *= c;
  d.metric_scale *= c;
  return TriMesh(std::move(d));
}

std::vector<double> chart_rows(const MetricSurface& surface, double h, const MeshOptions& options) {
  resolve_h(h);
  const double t0 = surface.t_min(), t1 = surface.t_max();
  const double tol = 1e-12 * (t1 - t0);
  std::vector<double> fixed = surface.feature_heights();
  for (double x : options.extra_rows) {
    if (!(x >= t0 - tol && x <= t1 + tol)) throw InvalidArgument("extra mesh row outside the chart");
    fixed.push_back(std::clamp(x, t0, t1));
  }
  fixed.push_back(t0);
  fixed.push_back(t1);
  std::sort(fixed.begin(), fixed.end());
  std::vector<double> anchors;
  for (double x : fixed)
    if (anchors.empty() || x - anchors.back() > tol) anchors.push_back(x);
  anchors.back() = t1;

  // Chart step corresponding to metric length h along the meridian.
  double speed = surface.scale();
  if (!surface.built_in()) {
    speed = 0.0;
    for (int i = 0; i <= 64; ++i)
      for (int j = 0; j < 16; ++j)
        speed = std::max(speed, std::sqrt(surface.metric(kTwoPi * j / 16, t0 + (t1 - t0) * i / 64).g22));
  }
  const double ht = h / speed;
  const RadiusProfile* prof = surface.profile();

  std::vector<double> rows{anchors.front()};
  for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
    const double p = anchors[k], q = anchors[k + 1];
    const double mid = 0.5 * (p + q);
    bool flat = false;
    double r = 0.0;
    if (prof) {
      for (const auto& piece : prof->pieces())
        if (mid >= piece.t0 && mid <= piece.t1) {
          flat = piece.flat();
          r = piece.value(mid);
          break;
        }
    }
    graded_rows(p, q, ht, r, flat ? options.grading : 0.0, rows);
  }
  return rows;
}

TriMesh triangulate(const MetricSurface& surface, double h, const MeshOptions& options) {
  resolve_h(h);
  angular_count(surface, h);
  const auto rows = chart_rows(surface, h, options);
  return build(surface, h, rows, {BandRows{0, static_cast<int>(rows.size()) - 1, 0, 1}}, options);
}

TriMesh triangulate_bands(const MetricSurface& surface, double h, const std::vector<std::array<double, 2>>& bands,
                          const MeshOptions& options) {
  resolve_h(h);
  if (bands.empty()) throw InvalidArgument("no bands requested");
  MeshOptions opts = options;
  for (const auto& b : bands) {
    if (!(b[1] > b[0])) throw InvalidArgument("band has an empty height range");
    opts.extra_rows.push_back(b[0]);
    opts.extra_rows.push_back(b[1]);
  }
  const auto rows = chart_rows(surface, h, opts);
  const double tol = 1e-12 * (surface.t_max() - surface.t_min());
  auto find_row = [&](double x) {
    auto it = std::min_element(rows.begin(), rows.end(),
                               [&](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
    if (std::abs(*it - x) > tol) throw InvalidArgument("band end does not lie on a mesh row");
    return static_cast<int>(it - rows.begin());
  };
  std::vector<BandRows> out;
  for (const auto& b : bands) out.push_back({find_row(b[0]), find_row(b[1]), 0, 1});
  std::sort(out.begin(), out.end(), [](const BandRows& a, const BandRows& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].first < out[i - 1].last) throw InvalidArgument("bands overlap");
  const int top = static_cast<int>(rows.size()) - 1;
  int next = 2;
  for (auto& b : out) {
    b.low_label = b.first == 0 ? 0 : next++;
    b.high_label = b.last == top ? 1 : next++;
  }
  return build(surface, h, rows, out, options);
}

} // namespace steklov
