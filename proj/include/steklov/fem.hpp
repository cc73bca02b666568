#pragma once

#include "steklov/mesh.hpp"
#include "steklov/types.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace steklov {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Symmetric sparse matrix with both triangles stored.
class SparseSymMatrix {
public:
  SparseSymMatrix() = default;
  explicit SparseSymMatrix(SparseMatrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const SparseMatrix& matrix() const { return m_; }
  double quad_form(const Eigen::VectorXd& u) const { return u.dot(m_ * u); }
  Eigen::VectorXd operator*(const Eigen::VectorXd& u) const { return m_ * u; }
  // One "row col value" line per stored entry, 0-based indices.
  void write_coordinate(std::ostream& out) const;

private:
  SparseMatrix m_;
};

struct AssemblyOptions {
  // Average the metric over the three edge midpoints (needs a mesh built with midpoint samples).
  bool midpoint_metric = false;
  // Diagonal boundary mass l/2 per edge end instead of the consistent l/6 [2 1; 1 2].
  bool lumped_mass = false;
};

// P1 element matrix for chart corners p and the constant tensor sqrt(det G) G^{-1}.
Eigen::Matrix3d element_stiffness(const std::array<Eigen::Vector2d, 3>& p, const Metric2& g);

SparseSymMatrix assemble_stiffness(const TriMesh& mesh, const AssemblyOptions& options = {});

struct BoundaryMass {
  SparseSymMatrix matrix;
  std::vector<int> labels;   // selected components
  std::vector<int> vertices; // sorted vertices on the selected components
  double length = 0.0;       // total selected boundary length
};

BoundaryMass assemble_boundary_mass(const TriMesh& mesh, std::span<const int> labels, const AssemblyOptions& options = {});

} // namespace steklov
