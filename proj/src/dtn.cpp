#include "steklov/dtn.hpp"

#include "steklov/envelope_cholesky.hpp"
#include "steklov/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace steklov {
namespace {

using Triplet = Eigen::Triplet<double>;

struct Partition {
  std::vector<int> boundary;  // Steklov vertices
  std::vector<int> interior;  // free, not Steklov
  std::vector<int> local;     // vertex -> index in boundary or interior, -1 when fixed
  std::vector<char> kind;     // 'b', 'i' or 'f'
};

Partition partition(int n, std::span<const int> steklov, std::span<const int> fixed) {
  Partition p;
  p.kind.assign(n, 'i');
  p.local.assign(n, -1);
  for (int v : fixed) {
    if (v < 0 || v >= n) throw InvalidArgument("fixed vertex out of range");
    p.kind[v] = 'f';
  }
  for (int v : steklov) {
    if (v < 0 || v >= n) throw InvalidArgument("boundary index out of range");
    if (p.kind[v] == 'f') throw InvalidArgument("Steklov and Dirichlet parts overlap");
    if (p.kind[v] == 'b') throw InvalidArgument("duplicate boundary index");
    p.kind[v] = 'b';
  }
  for (int v = 0; v < n; ++v) {
    if (p.kind[v] == 'b') {
      p.local[v] = static_cast<int>(p.boundary.size());
      p.boundary.push_back(v);
    } else if (p.kind[v] == 'i') {
      p.local[v] = static_cast<int>(p.interior.size());
      p.interior.push_back(v);
    }
  }
  return p;
}

struct Reduction {
  Partition part;
  SparseMatrix Kib;
  std::unique_ptr<linalg::EnvelopeCholesky> chol;
  Eigen::MatrixXd S;
};

// boundary_key: per vertex, a non-negative key for Steklov vertices. The
// interior ordering starts next to the boundary vertices with the smallest key.
Reduction reduce(const SparseMatrix& K, std::span<const int> steklov, std::span<const int> fixed,
                 std::span<const int> boundary_key) {
  const int n = static_cast<int>(K.rows());
  Reduction red;
  red.part = partition(n, steklov, fixed);
  const auto& p = red.part;
  const int nb = static_cast<int>(p.boundary.size());
  const int ni = static_cast<int>(p.interior.size());
  if (nb == 0) throw InvalidArgument("empty Steklov boundary");
  if (ni == 0) throw InvalidArgument("empty interior: every free vertex lies on the Steklov boundary");

  std::vector<Triplet> tii, tib;
  Eigen::MatrixXd Kbb = Eigen::MatrixXd::Zero(nb, nb);
  std::vector<int> key(ni, -1);
  for (int c = 0; c < K.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(K, c); it; ++it) {
      const int r = static_cast<int>(it.row());
      const char kr = p.kind[r], kc = p.kind[c];
      if (kr == 'i' && kc == 'i') tii.emplace_back(p.local[r], p.local[c], it.value());
      else if (kr == 'i' && kc == 'b') {
        tib.emplace_back(p.local[r], p.local[c], it.value());
        const int k = boundary_key.empty() ? 0 : boundary_key[c];
        int& slot = key[p.local[r]];
        if (slot < 0 || k < slot) slot = k;
      } else if (kr == 'b' && kc == 'b') Kbb(p.local[r], p.local[c]) += it.value();
    }
  SparseMatrix Kii(ni, ni);
  Kii.setFromTriplets(tii.begin(), tii.end());
  red.Kib.resize(ni, nb);
  red.Kib.setFromTriplets(tib.begin(), tib.end());

  auto perm = linalg::reverse_cuthill_mckee(Kii, key);
  red.chol = std::make_unique<linalg::EnvelopeCholesky>(Kii, std::move(perm));
  red.S = Kbb - red.chol->inverse_congruence(red.Kib);
  red.S = (0.5 * (red.S + red.S.transpose())).eval();
  return red;
}

bool same_eigenvalue(double x, double y) {
  return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
}

// The solver returns an arbitrary basis inside a multiple eigenvalue. Replace
// it by the B-orthonormal basis obtained from B-projections of the unit
// vectors on boundary rows 0, 1, ... (Gram-Schmidt), which depends only on
// the eigenspace. Simple eigenvectors get their largest entry positive.
void canonical_basis(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Bbb, Eigen::MatrixXd& V) {
  const int m = static_cast<int>(V.cols());
  for (int i0 = 0; i0 < m;) {
    int i1 = i0 + 1;
    while (i1 < m && same_eigenvalue(lambda[i1 - 1], lambda[i1])) ++i1;
    const int s = i1 - i0;
    if (s == 1) {
      Eigen::Index arg = 0;
      V.col(i0).cwiseAbs().maxCoeff(&arg);
      if (V(arg, i0) < 0.0) V.col(i0) *= -1.0;
    } else {
      const Eigen::MatrixXd coeff = V.middleCols(i0, s).transpose() * Bbb; // s x nb
      const double tau = 1e-3 * coeff.colwise().norm().maxCoeff();
      Eigen::MatrixXd Q(s, s);
      int q = 0;
      for (Eigen::Index r = 0; r < coeff.cols() && q < s; ++r) {
        Eigen::VectorXd w = coeff.col(r);
        for (int p = 0; p < q; ++p) w -= Q.col(p).dot(w) * Q.col(p);
        for (int p = 0; p < q; ++p) w -= Q.col(p).dot(w) * Q.col(p);
        const double nw = w.norm();
        if (nw > tau) Q.col(q++) = w / nw;
      }
      if (q == s) V.middleCols(i0, s) = (V.middleCols(i0, s) * Q).eval();
    }
    i0 = i1;
  }
}

SpectrumResult solve(const TriMesh& mesh, const SparseSymMatrix& K, const BoundaryMass& B, std::span<const int> fixed,
                     int k, ProblemDescriptor desc, const SpectrumOptions& options) {
  const int n = mesh.vertex_count();
  if (k < 0) throw InvalidArgument("k must be non-negative");
  const int nbv = static_cast<int>(B.vertices.size());
  if (k >= nbv) {
    std::ostringstream msg;
    msg << "k = " << k << " too large: only " << nbv << " Steklov boundary vertices";
    throw InvalidArgument(msg.str());
  }
  std::vector<int> label_of(n, -1);
  for (const auto& e : mesh.boundary_edges()) {
    for (int v : {e.v0, e.v1})
      if (label_of[v] < 0 || e.label < label_of[v]) label_of[v] = e.label;
  }
  // Only the lowest-labelled component seeds the interior ordering.
  std::vector<int> key(n, -1);
  for (int v : B.vertices) key[v] = label_of[v];

  Reduction red = reduce(K.matrix(), B.vertices, fixed, key);
  if (fixed.empty()) {
    // K 1 = 0 row by row, so S 1 = 0 exactly; drop the round-off row sums
    const Eigen::VectorXd rows = red.S.rowwise().sum();
    red.S.diagonal() -= rows;
  }
  const auto& part = red.part;
  const int nb = static_cast<int>(part.boundary.size());

  Eigen::MatrixXd Bbb = Eigen::MatrixXd::Zero(nb, nb);
  const SparseMatrix& Bm = B.matrix.matrix();
  for (int c = 0; c < Bm.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(Bm, c); it; ++it) {
      const int r = static_cast<int>(it.row());
      if (part.kind[r] == 'b' && part.kind[c] == 'b') Bbb(part.local[r], part.local[c]) += it.value();
    }
  Eigen::LLT<Eigen::MatrixXd> llt(Bbb);
  if (llt.info() != Eigen::Success) throw SolverError("boundary mass block is singular (degenerate boundary edge)");
  const auto L = llt.matrixL();
  Eigen::MatrixXd X = L.solve(red.S);
  Eigen::MatrixXd C = L.solve(X.transpose());
  C = (0.5 * (C + C.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
  if (eig.info() != Eigen::Success) throw SolverError("dense symmetric eigensolver did not converge");

  const int m = k + 1;
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  // Extend past k so that a cluster of equal eigenvalues is never cut.
  int m_ext = m;
  while (m_ext < nb && same_eigenvalue(lambda[m_ext - 1], lambda[m_ext])) ++m_ext;
  SpectrumResult res;
  res.problem = std::move(desc);
  res.boundary_vertices = part.boundary;
  res.eigenvalues.assign(lambda.data(), lambda.data() + m);
  Eigen::MatrixXd V = eig.eigenvectors().leftCols(m_ext);
  llt.matrixU().solveInPlace(V);
  canonical_basis(lambda, Bbb, V);
  V.conservativeResize(Eigen::NoChange, m);
  res.boundary_vectors = V;

  // Harmonic extension: u_i = -K_ii^{-1} K_ib v.
  Eigen::MatrixXd Ui = -(red.Kib * V);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd col = Ui.col(j);
    red.chol->solve_in_place(col);
    Ui.col(j) = col;
  }
  res.extensions = Eigen::MatrixXd::Zero(n, m);
  for (int b = 0; b < nb; ++b) res.extensions.row(part.boundary[b]) = V.row(b);
  for (std::size_t i = 0; i < part.interior.size(); ++i) res.extensions.row(part.interior[i]) = Ui.row(i);

  const Eigen::MatrixXd KU = K.matrix() * res.extensions;
  const Eigen::MatrixXd BU = Bm * res.extensions;
  for (int j = 0; j < m; ++j) {
    double r2 = 0.0;
    for (int v = 0; v < n; ++v) {
      if (part.kind[v] == 'f') continue;
      const double r = KU(v, j) - res.eigenvalues[j] * BU(v, j);
      r2 += r * r;
    }
    const double rel = std::sqrt(r2) / res.extensions.col(j).norm();
    res.residuals.push_back(rel);
    if (!(rel <= options.residual_tolerance)) {
      std::ostringstream msg;
      msg << "eigenpair " << j << " residual " << rel << " exceeds " << options.residual_tolerance;
      throw SolverError(msg.str());
    }
  }
  return res;
}

std::vector<int> vertices_on(const TriMesh& mesh, std::span<const int> labels) {
  std::vector<int> out;
  for (const auto& e : mesh.boundary_edges())
    if (std::find(labels.begin(), labels.end(), e.label) != labels.end()) {
      out.push_back(e.v0);
      out.push_back(e.v1);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

double SpectrumResult::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

double SpectrumResult::sigma_clean(std::size_t k) const {
  const double x = sigma(k);
  return std::abs(x) <= 1e-8 * std::abs(eigenvalues.back()) ? 0.0 : x;
}

bool is_zero_eigenvalue(double s0, double s1) { return std::abs(s0) < 1e-8 * std::abs(s1); }

Eigen::MatrixXd dtn_matrix(const SparseSymMatrix& K, std::span<const int> boundary_idx) {
  std::vector<int> b(boundary_idx.begin(), boundary_idx.end());
  std::vector<int> sorted = b;
  std::sort(sorted.begin(), sorted.end());
  Reduction red = reduce(K.matrix(), sorted, {}, {});
  // Return in the caller's index order.
  std::vector<int> pos(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) pos[i] = red.part.local[b[i]];
  Eigen::MatrixXd out(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = red.S(pos[i], pos[j]);
  return out;
}

SpectrumResult steklov_spectrum(const TriMesh& mesh, int k, const SpectrumOptions& options) {
  const auto labels = mesh.boundary_labels();
  const SparseSymMatrix K = assemble_stiffness(mesh, options.assembly);
  const BoundaryMass B = assemble_boundary_mass(mesh, labels, options.assembly);
  ProblemDescriptor d{ProblemKind::Steklov, options.surface_id, mesh.h(), labels, {}};
  return solve(mesh, K, B, {}, k, std::move(d), options);
}

SpectrumResult mixed_spectrum(const TriMesh& mesh, std::span<const int> steklov_labels, std::span<const int> inner_labels,
                              MixedKind kind, int k, const SpectrumOptions& options) {
  if (steklov_labels.empty()) throw InvalidArgument("empty Steklov part");
  for (int l : steklov_labels)
    if (std::find(inner_labels.begin(), inner_labels.end(), l) != inner_labels.end())
      throw InvalidArgument("Steklov and inner boundary labels overlap");
  const auto present = mesh.boundary_labels();
  for (int l : inner_labels)
    if (!std::binary_search(present.begin(), present.end(), l))
      throw InvalidArgument("inner boundary component " + std::to_string(l) + " does not exist");
  const SparseSymMatrix K = assemble_stiffness(mesh, options.assembly);
  const BoundaryMass B = assemble_boundary_mass(mesh, steklov_labels, options.assembly);
  std::vector<int> fixed;
  if (kind == MixedKind::Dirichlet) {
    fixed = vertices_on(mesh, inner_labels);
    for (int v : fixed)
      if (std::binary_search(B.vertices.begin(), B.vertices.end(), v))
        throw InvalidArgument("Dirichlet circle touches the Steklov boundary");
  }
  ProblemDescriptor d{kind == MixedKind::Neumann ? ProblemKind::MixedNeumann : ProblemKind::MixedDirichlet,
                      options.surface_id, mesh.h(), B.labels,
                      std::vector<int>(inner_labels.begin(), inner_labels.end())};
  return solve(mesh, K, B, fixed, k, std::move(d), options);
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& result) {
  const auto old = out.precision(17);
  out << "k,sigma,residual\n";
  for (std::size_t k = 0; k < result.eigenvalues.size(); ++k)
    out << k << ',' << result.eigenvalues[k] << ',' << result.residuals[k] << '\n';
  out.precision(old);
}

void write_eigenfunctions_csv(std::ostream& out, const TriMesh& mesh, const SpectrumResult& result) {
  const auto old = out.precision(17);
  out << "vertex,s,t";
  for (Eigen::Index j = 0; j < result.extensions.cols(); ++j) out << ",u" << j;
  out << '\n';
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    out << v << ',' << mesh.vertices()[v].x() << ',' << mesh.vertices()[v].y();
    for (Eigen::Index j = 0; j < result.extensions.cols(); ++j) out << ',' << result.extensions(v, j);
    out << '\n';
  }
  out.precision(old);
}

} // namespace steklov
