#pragma once

#include "steklov/fem.hpp"
#include "steklov/mesh.hpp"
#include "steklov/types.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace steklov {

struct ProblemDescriptor {
  ProblemKind kind = ProblemKind::Steklov;
  std::string surface_id;
  double h = 0.0;
  std::vector<int> steklov_labels;
  std::vector<int> inner_labels;
};

struct SpectrumResult {
  ProblemDescriptor problem;
  std::vector<double> eigenvalues;      // ascending
  std::vector<int> boundary_vertices;   // Steklov vertices, rows of boundary_vectors
  Eigen::MatrixXd boundary_vectors;     // B-orthonormal columns
  Eigen::MatrixXd extensions;           // discrete harmonic extensions on all vertices
  std::vector<double> residuals;        // |K u - sigma B u| / |u| over the free vertices

  double sigma(std::size_t k) const { return eigenvalues.at(k); }
  // sigma(k), snapped to 0 when |sigma| <= 1e-8 times the largest computed one.
  double sigma_clean(std::size_t k) const;
  double max_residual() const;
};

// True when s0 counts as a zero eigenvalue next to s1.
bool is_zero_eigenvalue(double s0, double s1);

// Schur complement K_bb - K_bi K_ii^{-1} K_ib onto the listed vertices.
Eigen::MatrixXd dtn_matrix(const SparseSymMatrix& K, std::span<const int> boundary_idx);

struct SpectrumOptions {
  AssemblyOptions assembly;
  std::string surface_id;
  double residual_tolerance = 1e-8;
};

// Eigenpairs 0..k of K u = sigma B u with B on every boundary component.
SpectrumResult steklov_spectrum(const TriMesh& mesh, int k, const SpectrumOptions& options = {});

// Steklov condition on `steklov_labels`; on `inner_labels` either nothing
// (Neumann) or u = 0 (Dirichlet). Remaining components are left free.
SpectrumResult mixed_spectrum(const TriMesh& mesh, std::span<const int> steklov_labels,
                              std::span<const int> inner_labels, MixedKind kind, int k,
                              const SpectrumOptions& options = {});

// CSV with columns k, sigma, residual.
void write_spectrum_csv(std::ostream& out, const SpectrumResult& result);
// Vertex-indexed CSV: vertex, s, t, u0, u1, ...
void write_eigenfunctions_csv(std::ostream& out, const TriMesh& mesh, const SpectrumResult& result);

} // namespace steklov
