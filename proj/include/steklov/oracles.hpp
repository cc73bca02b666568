#pragma once

#include "steklov/mesh.hpp"
#include "steklov/surface.hpp"
#include "steklov/types.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <vector>

namespace steklov {

// Mixed eigenvalue of the j-th Fourier mode on the surface of revolution
// dt^2 + r(t)^2 ds^2, t in [0, depth], Steklov at t = 0, Neumann or Dirichlet
// at t = depth. Integrates (r phi')' = (j^2 / r) phi backwards with RK4.
double separation_eigenvalue(const std::function<double(double)>& r, double depth, int j, MixedKind kind,
                             int steps = 20000);

// First k+1 eigenvalues assembled from separation_eigenvalue, j >= 1 twice.
std::vector<double> separation_spectrum(const std::function<double(double)>& r, double depth, MixedKind kind, int k,
                                        int steps = 20000);

// Dirichlet energy of arctan(sinh t) / arctan(1/sinh(l/2)) over the half collar
// of geodesic length l, by 7-point degree-5 quadrature on each triangle of a
// mesh of target size h with the exact metric.
double collar_energy_quadrature(double l, double h);

// Chart interval of the narrowest flat piece of a surface of revolution.
std::array<double, 2> neck_interval(const MetricSurface& surface);

// Vertex values of the function that is -1 before the neck, +1 after it and
// linear in arclength along the neck.
Eigen::VectorXd thin_neck_test_function(const MetricSurface& surface, const TriMesh& mesh);

} // namespace steklov
