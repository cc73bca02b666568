#pragma once

#include "steklov/types.hpp"

#include <string_view>
#include <vector>

namespace steklov {

// Mode attached to a closed-form eigenvalue: the constant or linear-in-t
// mode (j = 0) or the j-th Fourier pair with tanh / coth profile.
enum class ModeType { Constant, Linear, Tanh, Coth };

std::string_view to_string(ModeType mode);

struct ClosedFormEigenvalue {
  double value = 0.0;
  int j = 0;
  ModeType mode = ModeType::Constant;
};

struct ClosedFormSpectrum {
  // Ascending; each j >= 1 mode appears twice (cos and sin).
  std::vector<ClosedFormEigenvalue> entries;

  std::vector<double> values() const;
  std::size_t size() const { return entries.size(); }
  double operator[](std::size_t i) const { return entries[i].value; }
};

// First k+1 Steklov eigenvalues of S^1_R x [-T, T] with the product metric.
ClosedFormSpectrum cylinder_steklov(double R, double T, int k);

// Positive root of x tanh(x) = 1.
double rho();

// First k+1 eigenvalues on a flat strip (circle of length a) x [0, L], Steklov
// at t = 0 and Neumann or Dirichlet at t = L.
ClosedFormSpectrum cylinder_mixed(double a, double L, MixedKind kind, int k);

// Half-width arcsinh(1/sinh(l/2)) of the standard collar around a closed
// geodesic of length l.
double collar_width(double l);

// Depth arctan(1/sinh(a/2)) of the flat strip conformal to a half collar
// with boundary geodesic of length a.
double collar_depth(double a);

ClosedFormSpectrum collar_mixed(double a, MixedKind kind, int k);

// Dirichlet energy l / arctan(1/sinh(l/2)) of the collar test function.
double collar_test_energy(double l);

} // namespace steklov
