#pragma once

#include "steklov/mesh.hpp"
#include "steklov/surface.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace steklov {

// Interval guaranteed to contain a geometric quantity.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  Bracket scaled(double f) const { return {lo * f, hi * f}; }
};

struct GeometryData {
  int b = 2;
  double a = 0.0;  // boundary circle length (largest one when they differ)
  double L = 0.0;  // depth of the product neighbourhoods of the boundary
  Bracket area;
  Bracket length_sep;  // shortest separating curve system
  Bracket diam_bd;     // largest distance in M between boundary points
  Bracket inj_bd;      // injectivity radius on boundary-to-boundary geodesics outside the collars
  double kappa = 0.0;  // lower bound on the Gaussian curvature
  bool kappa_exact = true;
  std::optional<int> genus;
  std::vector<double> boundary_lengths;

  bool equal_boundary_lengths(double rel = 1e-12) const;
  // Geometry of the metric c^2 g.
  GeometryData scaled(double c) const;
  // Throws InvalidArgument when a bracket or a structural invariant is broken.
  void validate() const;
};

// Caller-supplied brackets. Built-in families accept any subset; surfaces
// outside them must supply area, length_sep, diam_bd, inj_bd, kappa and L.
struct GeometryOverrides {
  std::optional<Bracket> area;
  std::optional<Bracket> length_sep;
  std::optional<Bracket> diam_bd;
  std::optional<Bracket> inj_bd;
  std::optional<double> kappa;
  std::optional<double> L;
  std::optional<int> genus;
};

GeometryData geometric_data(const MetricSurface& surface, const TriMesh& mesh, const GeometryOverrides& overrides = {});

// Largest boundary-to-boundary shortest-path length in a vertex graph over
// the grid of `mesh`, whose edges are chart segments of slope up to 3 with
// exact metric lengths. Every path length bounds the geodesic distance from above.
double boundary_graph_diameter(const MetricSurface& surface, const TriMesh& mesh);

nlohmann::json to_json(const Bracket& b);
nlohmann::json to_json(const GeometryData& g);

} // namespace steklov
