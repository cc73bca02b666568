#include "steklov/fem.hpp"

#include "steklov/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace steklov {
namespace {

using Triplet = Eigen::Triplet<double>;

// sqrt(det G) G^{-1} = adj(G) / sqrt(det G).
Eigen::Matrix2d conformal_tensor(const Metric2& g) {
  const double sd = std::sqrt(g.det());
  Eigen::Matrix2d a;
  a << g.g22 / sd, -g.g12 / sd, -g.g12 / sd, g.g11 / sd;
  return a;
}

Eigen::Matrix3d element_matrix(const std::array<Eigen::Vector2d, 3>& p, const Eigen::Matrix2d& tensor) {
  Eigen::Matrix2d J;
  J.col(0) = p[1] - p[0];
  J.col(1) = p[2] - p[0];
  const double det = J.determinant();
  const double area = 0.5 * std::abs(det);
  // Columns: chart gradients of the three barycentric coordinates.
  const Eigen::Matrix2d JinvT = J.inverse().transpose();
  Eigen::Matrix<double, 2, 3> D;
  D.col(1) = JinvT.col(0);
  D.col(2) = JinvT.col(1);
  D.col(0) = -D.col(1) - D.col(2);
  const Eigen::Matrix<double, 2, 3> AD = tensor * D;
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) k(i, j) = k(j, i) = area * D.col(i).dot(AD.col(j));
  return k;
}

} // namespace

SparseSymMatrix::SparseSymMatrix(SparseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("symmetric matrix must be square");
  m_.makeCompressed();
}

void SparseSymMatrix::write_coordinate(std::ostream& out) const {
  const auto old = out.precision(17);
  for (int c = 0; c < m_.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m_, c); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  out.precision(old);
}

Eigen::Matrix3d element_stiffness(const std::array<Eigen::Vector2d, 3>& p, const Metric2& g) {
  if (!g.positive_definite()) throw InvalidArgument("metric sample is not positive definite");
  return element_matrix(p, conformal_tensor(g));
}

SparseSymMatrix assemble_stiffness(const TriMesh& mesh, const AssemblyOptions& options) {
  if (options.midpoint_metric && !mesh.has_midpoint_metric())
    throw InvalidArgument("midpoint metric requested but the mesh carries centroid samples only");
  std::vector<Triplet> trip;
  trip.reserve(9 * static_cast<std::size_t>(mesh.triangle_count()));
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    Eigen::Matrix2d tensor;
    if (options.midpoint_metric) {
      tensor.setZero();
      for (const auto& g : mesh.midpoint_metric(t)) {
        if (!g.positive_definite()) throw InvalidArgument("singular metric sample in triangle " + std::to_string(t));
        tensor += conformal_tensor(g) / 3.0;
      }
    } else {
      const Metric2& g = mesh.metric(t);
      if (!g.positive_definite()) throw InvalidArgument("singular metric sample in triangle " + std::to_string(t));
      tensor = conformal_tensor(g);
    }
    const Eigen::Matrix3d k = element_matrix(mesh.corners(t), tensor);
    const auto& tri = mesh.triangles()[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trip.emplace_back(tri[i], tri[j], k(i, j));
  }
  SparseMatrix m(mesh.vertex_count(), mesh.vertex_count());
  m.setFromTriplets(trip.begin(), trip.end());
  return SparseSymMatrix(std::move(m));
}

BoundaryMass assemble_boundary_mass(const TriMesh& mesh, std::span<const int> labels, const AssemblyOptions& options) {
  if (labels.empty()) throw InvalidArgument("no boundary components selected");
  BoundaryMass out;
  out.labels.assign(labels.begin(), labels.end());
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());
  const auto present = mesh.boundary_labels();
  for (int l : out.labels)
    if (!std::binary_search(present.begin(), present.end(), l))
      throw InvalidArgument("boundary component " + std::to_string(l) + " does not exist");

  std::vector<Triplet> trip;
  for (const auto& e : mesh.boundary_edges()) {
    if (!std::binary_search(out.labels.begin(), out.labels.end(), e.label)) continue;
    out.length += e.length;
    out.vertices.push_back(e.v0);
    out.vertices.push_back(e.v1);
    if (options.lumped_mass) {
      trip.emplace_back(e.v0, e.v0, 0.5 * e.length);
      trip.emplace_back(e.v1, e.v1, 0.5 * e.length);
    } else {
      const double d = e.length / 3.0, o = e.length / 6.0;
      trip.emplace_back(e.v0, e.v0, d);
      trip.emplace_back(e.v1, e.v1, d);
      trip.emplace_back(e.v0, e.v1, o);
      trip.emplace_back(e.v1, e.v0, o);
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  SparseMatrix m(mesh.vertex_count(), mesh.vertex_count());
  m.setFromTriplets(trip.begin(), trip.end());
  out.matrix = SparseSymMatrix(std::move(m));
  return out;
}

} // namespace steklov
