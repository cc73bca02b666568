#include "steklov/geometry.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace steklov {
namespace {

constexpr int kReach = 3;

// Metric length of the chart segment (s0, t0) -> (s1, t1), 8-point Gauss-Legendre.
double segment_length(const MetricSurface& surface, double s0, double t0, double s1, double t1) {
  static constexpr double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static constexpr double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  const double ds = s1 - s0, dt = t1 - t0;
  auto speed = [&](double tau) {
    return std::sqrt(surface.metric(s0 + tau * ds, t0 + tau * dt).norm2(ds, dt));
  };
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += w[i] * (speed(0.5 - 0.5 * x[i]) + speed(0.5 + 0.5 * x[i]));
  return 0.5 * sum;
}

} // namespace

bool GeometryData::equal_boundary_lengths(double rel) const {
  if (boundary_lengths.empty()) return true;
  const auto [lo, hi] = std::minmax_element(boundary_lengths.begin(), boundary_lengths.end());
  return *hi - *lo <= rel * *hi;
}

GeometryData GeometryData::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scale factor must be positive");
  GeometryData g = *this;
  g.a *= c;
  g.L *= c;
  g.area = area.scaled(c * c);
  g.length_sep = length_sep.scaled(c);
  g.diam_bd = diam_bd.scaled(c);
  g.inj_bd = inj_bd.scaled(c);
  g.kappa = kappa / (c * c);
  for (double& l : g.boundary_lengths) l *= c;
  return g;
}

void GeometryData::validate() const {
  if (b < 1) throw InvalidArgument("geometry needs at least one boundary component");
  if (!(a > 0.0)) throw InvalidArgument("boundary length a must be positive");
  if (L < 0.0) throw InvalidArgument("depth L must be non-negative");
  const std::pair<const char*, const Bracket*> all[] = {
      {"area", &area}, {"length_sep", &length_sep}, {"diam_bd", &diam_bd}, {"inj_bd", &inj_bd}};
  for (const auto& [name, br] : all) {
    if (!(br->lo <= br->hi) || br->lo < 0.0 || !std::isfinite(br->hi))
      throw InvalidArgument(std::string("bracket ") + name + " is not an ordered non-negative interval");
  }
  const double tol = 1e-12;
  if (inj_bd.hi > L * (1.0 + tol) + tol) throw InvalidArgument("inj_bd exceeds the depth L");
  if (length_sep.hi > a * (1.0 + tol)) throw InvalidArgument("length_sep exceeds the boundary length a");
}

double boundary_graph_diameter(const MetricSurface& surface, const TriMesh& mesh) {
  const int ns = mesh.ns();
  const auto& rows = mesh.rows();
  const int nr = static_cast<int>(rows.size());
  if (static_cast<std::size_t>(mesh.vertex_count()) != static_cast<std::size_t>(nr) * ns)
    throw InvalidArgument("boundary graph diameter needs a single-band grid mesh");
  const double dsg = kTwoPi / ns;

  struct Offset {
    int di, dr;
  };
  std::vector<Offset> offsets;
  for (int dr = -kReach; dr <= kReach; ++dr)
    for (int di = -kReach; di <= kReach; ++di)
      if ((di || dr) && std::gcd(std::abs(di), std::abs(dr)) == 1) offsets.push_back({di, dr});

  // Rotation symmetry of surfaces of revolution: lengths depend on (row, dr, |di|) only.
  const bool symmetric = surface.built_in();
  std::vector<double> cache;
  auto cache_index = [&](int r, int dr, int adi) { return (static_cast<std::size_t>(r) * (2 * kReach + 1) + (dr + kReach)) * (kReach + 1) + adi; };
  if (symmetric) {
    cache.assign(static_cast<std::size_t>(nr) * (2 * kReach + 1) * (kReach + 1), -1.0);
  }
  auto length = [&](int r, int i, int dr, int di) {
    if (symmetric) {
      double& c = cache[cache_index(r, dr, std::abs(di))];
      if (c < 0.0) c = segment_length(surface, 0.0, rows[r], std::abs(di) * dsg, rows[r + dr]);
      return c;
    }
    return segment_length(surface, i * dsg, rows[r], (i + di) * dsg, rows[r + dr]);
  };

  std::vector<int> sources;
  if (symmetric) {
    sources = {0, (nr - 1) * ns};
  } else {
    for (int i = 0; i < ns; ++i) {
      sources.push_back(i);
      sources.push_back((nr - 1) * ns + i);
    }
  }

  const int nv = nr * ns;
  std::vector<double> dist(nv);
  using Item = std::pair<double, int>;
  double best = 0.0;
  for (int src : sources) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      const int r = v / ns, i = v % ns;
      for (const auto& o : offsets) {
        const int rr = r + o.dr;
        if (rr < 0 || rr >= nr) continue;
        const int ii = ((i + o.di) % ns + ns) % ns;
        const int w = rr * ns + ii;
        const double nd = d + length(r, i, o.dr, o.di);
        if (nd < dist[w]) {
          dist[w] = nd;
          heap.push({nd, w});
        }
      }
    }
    for (int i = 0; i < ns; ++i) best = std::max({best, dist[i], dist[(nr - 1) * ns + i]});
  }
  return best;
}

GeometryData geometric_data(const MetricSurface& surface, const TriMesh& mesh, const GeometryOverrides& ov) {
  GeometryData g;
  g.b = surface.boundary_count();
  for (const auto& bc : surface.boundaries()) g.boundary_lengths.push_back(bc.length);
  g.a = *std::max_element(g.boundary_lengths.begin(), g.boundary_lengths.end());
  g.genus = ov.genus;

  const RadiusProfile* prof = surface.profile();
  if (!prof) {
    if (!ov.area || !ov.length_sep || !ov.diam_bd || !ov.inj_bd || !ov.kappa || !ov.L)
      throw InvalidArgument("surface '" + surface.family() +
                            "' is not a built-in family: area, length_sep, diam_bd, inj_bd, kappa and L must be supplied");
    g.area = *ov.area;
    g.length_sep = *ov.length_sep;
    g.diam_bd = *ov.diam_bd;
    g.inj_bd = *ov.inj_bd;
    g.kappa = *ov.kappa;
    g.kappa_exact = false;
    g.L = *ov.L;
    g.validate();
    return g;
  }

  const double c = surface.scale();
  const double t0 = surface.t_min(), t1 = surface.t_max();
  g.L = ov.L.value_or(surface.cylindrical_depth());

  g.area = ov.area.value_or(Bracket{c * c * kTwoPi * prof->integral(t0, t1), c * c * kTwoPi * prof->integral(t0, t1)});

  // Every curve separating the two boundary circles meets every meridian,
  // so it is at least as long as the shortest parallel circle.
  const double min_circ = kTwoPi * c * prof->radius_range(t0, t1).min;
  g.length_sep = ov.length_sep.value_or(Bracket{min_circ, min_circ});

  if (ov.diam_bd) {
    g.diam_bd = *ov.diam_bd;
  } else {
    const double meridian = c * (t1 - t0);
    double hi = meridian + 0.5 * g.a;
    double max_edge = 0.0;
    for (const auto& e : mesh.boundary_edges()) max_edge = std::max(max_edge, e.length);
    hi = std::min(hi, boundary_graph_diameter(surface, mesh) + max_edge);
    g.diam_bd = {meridian, hi};
  }

  // Band outside the product neighbourhoods of depth L.
  const double depth = surface.cylindrical_depth() / c;
  const double b0 = std::min(t0 + depth, 0.5 * (t0 + t1));
  const double b1 = std::max(t1 - depth, 0.5 * (t0 + t1));
  if (ov.inj_bd) {
    g.inj_bd = *ov.inj_bd;
  } else {
    const auto kr = prof->curvature_range(b0, b1);
    double kplus = std::max(kr.max, 0.0);
    if (!kr.exact) kplus = kplus * 1.02 + 1e-12;
    const double conj = kplus > 0.0 ? kPi / (std::sqrt(kplus) / c) : std::numeric_limits<double>::infinity();
    const double loop = 0.5 * kTwoPi * c * prof->radius_range(b0, b1).min;
    g.inj_bd = {std::min({conj, loop, g.L}), g.L};
  }

  if (ov.kappa) {
    g.kappa = *ov.kappa;
    g.kappa_exact = false;
  } else {
    const auto kr = prof->curvature_range(t0, t1);
    double k = kr.min;
    if (!kr.exact) k = k - 0.02 * std::abs(k) - 1e-12;
    g.kappa = k / (c * c);
    g.kappa_exact = kr.exact;
  }
  g.validate();
  return g;
}

nlohmann::json to_json(const Bracket& b) { return nlohmann::json::array({b.lo, b.hi}); }

nlohmann::json to_json(const GeometryData& g) {
  nlohmann::json j;
  j["b"] = g.b;
  j["a"] = g.a;
  j["L"] = g.L;
  j["area"] = to_json(g.area);
  j["length_sep"] = to_json(g.length_sep);
  j["diam_bd"] = to_json(g.diam_bd);
  j["inj_bd"] = to_json(g.inj_bd);
  j["kappa"] = g.kappa;
  j["kappa_exact"] = g.kappa_exact;
  j["boundary_lengths"] = g.boundary_lengths;
  if (g.genus) j["genus"] = *g.genus;
  return j;
}

} // namespace steklov
