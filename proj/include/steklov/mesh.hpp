#pragma once

#include "steklov/surface.hpp"
#include "steklov/types.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace steklov {

struct BoundaryEdge {
  int v0 = 0;
  int v1 = 0;
  int label = 0;
  double length = 0.0; // Riemannian length
};

struct MeshOptions {
  // Sample the metric at the three edge midpoints as well as the centroid.
  bool midpoint_metric = false;
  // Chart heights forced into the row set (strip cuts).
  std::vector<double> extra_rows;
  // Growth rate of the row spacing away from the ends of flat pieces.
  double grading = 0.1;
  std::size_t max_vertices = 0; // 0: STEKLOV_MAX_VERTICES or 200000
};

std::size_t default_max_vertices();

// Raw mesh arrays; TriMesh validates them on construction.
struct TriMeshData {
  std::vector<Eigen::Vector2d> vertices;               // chart (s, t), s in [0, 2pi)
  std::vector<std::array<int, 3>> triangles;           // counter-clockwise in the chart
  std::vector<std::array<Eigen::Vector2d, 3>> corners; // unwrapped chart corners per triangle
  std::vector<Metric2> centroid_metric;
  std::vector<std::array<Metric2, 3>> midpoint_metric; // empty unless requested
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<int> vertex_row; // index into rows
  std::vector<double> rows;    // chart heights of the grid rows
  int ns = 0;                  // vertices per row
  double h = 0.0;
  double metric_scale = 1.0;
};

class TriMesh {
public:
  explicit TriMesh(TriMeshData data);

  int vertex_count() const { return static_cast<int>(d_.vertices.size()); }
  int triangle_count() const { return static_cast<int>(d_.triangles.size()); }
  const std::vector<Eigen::Vector2d>& vertices() const { return d_.vertices; }
  const std::vector<std::array<int, 3>>& triangles() const { return d_.triangles; }
  const std::array<Eigen::Vector2d, 3>& corners(int tri) const { return d_.corners[tri]; }
  const Metric2& metric(int tri) const { return d_.centroid_metric[tri]; }
  bool has_midpoint_metric() const { return !d_.midpoint_metric.empty(); }
  const std::array<Metric2, 3>& midpoint_metric(int tri) const { return d_.midpoint_metric[tri]; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return d_.boundary_edges; }
  const std::vector<double>& rows() const { return d_.rows; }
  int row_of(int vertex) const { return d_.vertex_row[vertex]; }
  int ns() const { return d_.ns; }
  double h() const { return d_.h; }
  double metric_scale() const { return d_.metric_scale; }

  // Sorted distinct boundary labels.
  std::vector<int> boundary_labels() const;
  double boundary_length(int label) const;
  double chart_area(int tri) const;
  // Riemannian area of one triangle with the sampled metric.
  double area(int tri) const;
  double total_area() const;
  // Unique undirected edges (i < j).
  std::vector<std::pair<int, int>> edges() const;

  // Same mesh carrying the metric c^2 G.
  TriMesh scaled_metric(double c) const;

private:
  void validate() const;
  TriMeshData d_;
};

// Chart heights of the grid rows used by triangulate for a target edge length h.
std::vector<double> chart_rows(const MetricSurface& surface, double h, const MeshOptions& options = {});

TriMesh triangulate(const MetricSurface& surface, double h, const MeshOptions& options = {});

// Disjoint meshes of the bands [lo, hi] (chart heights), using the same rows as
// triangulate with the band ends added to options.extra_rows. Circles on the
// chart ends keep labels 0 and 1; cut circles get labels 2, 3, ... by height.
TriMesh triangulate_bands(const MetricSurface& surface, double h, const std::vector<std::array<double, 2>>& bands,
                          const MeshOptions& options = {});

} // namespace steklov
