#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <span>
#include <vector>

namespace steklov::linalg {

// Reverse Cuthill-McKee ordering of the symmetric pattern of `a`; returns
// perm with perm[new] = old. Within each connected component the first level
// set is the vertices carrying the smallest non-negative `start_key` (a
// pseudo-peripheral vertex when the component has none). Deterministic.
std::vector<int> reverse_cuthill_mckee(const Eigen::SparseMatrix<double>& a, std::span<const int> start_key = {});

// Profile (envelope) of the lower triangle of P A P^T.
std::size_t envelope_size(const Eigen::SparseMatrix<double>& a, std::span<const int> perm);

// Cholesky factor of P A P^T stored row by row over the envelope.
class EnvelopeCholesky {
public:
  // Throws SolverError on a non-positive pivot.
  EnvelopeCholesky(const Eigen::SparseMatrix<double>& a, std::vector<int> perm);

  int size() const { return static_cast<int>(first_.size()); }
  std::size_t envelope_size() const { return values_.size(); }
  int bandwidth() const { return bandwidth_; }
  const std::vector<int>& permutation() const { return perm_; }

  // Overwrites b with A^{-1} b (original ordering).
  void solve_in_place(Eigen::Ref<Eigen::VectorXd> b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

  // R^T A^{-1} R for sparse R with size() rows.
  Eigen::MatrixXd inverse_congruence(const Eigen::SparseMatrix<double>& r) const;

private:
  const double* row(int i) const { return values_.data() + start_[i]; }
  double entry(int i, int k) const { return k < first_[i] ? 0.0 : values_[start_[i] + (k - first_[i])]; }
  void forward(double* y) const;
  void backward(double* x) const;

  std::vector<int> perm_;
  std::vector<int> iperm_;
  std::vector<int> first_;
  std::vector<std::size_t> start_;
  std::vector<double> values_;
  int bandwidth_ = 0;
};

} // namespace steklov::linalg
