#include "support.hpp"

#include "steklov/error.hpp"
#include "steklov/fem.hpp"
#include "steklov/oracles.hpp"
#include "steklov/zoo.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <sstream>
#include <vector>

using namespace steklov;
using namespace steklov::test;

namespace {

Eigen::VectorXd chart_t(const TriMesh& mesh) {
  Eigen::VectorXd u(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) u[v] = mesh.vertices()[v].y();
  return u;
}

} // namespace

TEST_SUITE("fem") {

TEST_CASE("reference element with identity metric") {
  const std::array<Eigen::Vector2d, 3> p{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  const Eigen::Matrix3d k = element_stiffness(p, Metric2{});
  Eigen::Matrix3d expect;
  expect << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
  CHECK((k - expect).cwiseAbs().maxCoeff() < 1e-15);
  // Conformal invariance at element level.
  CHECK((element_stiffness(p, Metric2{}.scaled(7.3)) - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(element_stiffness(p, Metric2{1.0, 1.0, 1.0}), InvalidArgument);
}

TEST_CASE("element with anisotropic metric") {
  // G = diag(4, 1): stretching s by 2 maps to the reference metric.
  const std::array<Eigen::Vector2d, 3> p{Eigen::Vector2d(0, 0), Eigen::Vector2d(0.5, 0), Eigen::Vector2d(0, 1)};
  const Eigen::Matrix3d k = element_stiffness(p, Metric2{4.0, 0.0, 1.0});
  Eigen::Matrix3d expect;
  expect << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
  CHECK((k - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("stiffness is symmetric with constant kernel") {
  for (const auto& e : surface_zoo()) {
    CAPTURE(e.id);
    const auto surface = build_surface(e.spec);
    const auto mesh = triangulate(surface, mesh_size(surface, 0.1));
    const auto K = assemble_stiffness(mesh);
    const SparseMatrix& m = K.matrix();
    const SparseMatrix diff = m - SparseMatrix(m.transpose());
    double asym = 0.0;
    for (int c = 0; c < diff.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(diff, c); it; ++it) asym = std::max(asym, std::abs(it.value()));
    CHECK(asym <= 1e-14);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(K.dim());
    CHECK((K * ones).cwiseAbs().maxCoeff() < 1e-12 * m.coeffs().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("stiffness is positive semidefinite with a one-dimensional kernel") {
  const auto mesh = triangulate(build_surface(zoo_entry("hyp-neck-std").spec), 0.1);
  const Eigen::MatrixXd k = Eigen::MatrixXd(assemble_stiffness(mesh).matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double scale = ev.maxCoeff();
  CHECK(std::abs(ev[0]) < 1e-12 * scale);
  CHECK(ev[1] > 1e-8 * scale);
}

TEST_CASE("metric scaling leaves the stiffness matrix unchanged") {
  const auto mesh = triangulate(build_surface(zoo_entry("collar-full").spec), 0.1);
  const SparseMatrix a = assemble_stiffness(mesh).matrix();
  const SparseMatrix b = assemble_stiffness(mesh.scaled_metric(3.0)).matrix();
  const double m = a.coeffs().cwiseAbs().maxCoeff();
  CHECK(SparseMatrix(a - b).coeffs().cwiseAbs().maxCoeff() <= 1e-14 * m);
}

TEST_CASE("energy of the height function on the unit cylinder") {
  const auto mesh = triangulate(cylinder(1.0, 1.0), 0.05);
  const auto K = assemble_stiffness(mesh);
  // Linear in the chart on a flat metric: Galerkin exact.
  CHECK(rel(K.quad_form(chart_t(mesh)), 4.0 * kPi) < 1e-12);
  Eigen::VectorXd s(mesh.vertex_count());
  // cos(s) is not linear but its energy converges to 2T * pi.
  for (int v = 0; v < mesh.vertex_count(); ++v) s[v] = std::cos(mesh.vertices()[v].x());
  CHECK(rel(K.quad_form(s), 2.0 * kPi) < 5e-3);
}

TEST_CASE("boundary mass") {
  const auto mesh = triangulate(cylinder(1.0, 1.0), kPi / 8.0);
  const std::vector<int> one{0};
  const auto B0 = assemble_boundary_mass(mesh, one);
  CHECK(B0.vertices.size() == 16);
  CHECK(rel(B0.length, kTwoPi) < 1e-12);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.vertex_count());
  CHECK(rel((B0.matrix * ones).sum(), kTwoPi) < 1e-12);
  CHECK(rel(B0.matrix.quad_form(ones), kTwoPi) < 1e-12);

  const std::vector<int> both{0, 1};
  const auto B = assemble_boundary_mass(mesh, both);
  CHECK(rel(B.matrix.quad_form(chart_t(mesh)), 4.0 * kPi) < 1e-14);
  // Tridiagonal per circle: 3 entries per boundary row.
  CHECK(B.matrix.matrix().nonZeros() == 3 * 32);
  // Positive semidefinite.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(B.matrix.matrix()), Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().minCoeff() > -1e-14);

  AssemblyOptions lumped;
  lumped.lumped_mass = true;
  const auto L = assemble_boundary_mass(mesh, both, lumped);
  CHECK(L.matrix.matrix().nonZeros() == 32);
  CHECK(rel(L.matrix.quad_form(ones), 2.0 * kTwoPi) < 1e-12);

  CHECK_THROWS_AS(assemble_boundary_mass(mesh, std::vector<int>{}), InvalidArgument);
  CHECK_THROWS_AS(assemble_boundary_mass(mesh, std::vector<int>{5}), InvalidArgument);
}

TEST_CASE("boundary mass row sums on curved boundaries") {
  for (const auto& e : surface_zoo()) {
    CAPTURE(e.id);
    const auto surface = build_surface(e.spec);
    const auto mesh = triangulate(surface, mesh_size(surface, 0.02));
    for (int label : mesh.boundary_labels()) {
      const auto B = assemble_boundary_mass(mesh, std::vector<int>{label});
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.vertex_count());
      CHECK(rel(B.matrix.quad_form(ones), surface.boundaries()[label].length) < 1e-3);
    }
  }
}

TEST_CASE("assembly is deterministic") {
  const auto surface = build_surface(zoo_entry("thin-neck-eps0.2").spec);
  const auto mesh = triangulate(surface, mesh_size(surface, 0.1));
  const auto a = assemble_stiffness(mesh).matrix();
  const auto b = assemble_stiffness(mesh).matrix();
  REQUIRE(a.nonZeros() == b.nonZeros());
  CHECK(std::equal(a.valuePtr(), a.valuePtr() + a.nonZeros(), b.valuePtr()));
  CHECK(std::equal(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros(), b.innerIndexPtr()));
}

TEST_CASE("midpoint metric option") {
  const auto surface = half_collar(1.0);
  MeshOptions mo;
  mo.midpoint_metric = true;
  const auto mesh = triangulate(surface, 0.05, mo);
  AssemblyOptions ao;
  ao.midpoint_metric = true;
  const auto K = assemble_stiffness(mesh, ao);
  CHECK((K * Eigen::VectorXd::Ones(K.dim())).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(assemble_stiffness(triangulate(surface, 0.05), ao), InvalidArgument);
}

TEST_CASE("coordinate dump") {
  const auto mesh = triangulate(cylinder(1.0, 1.0), kPi / 4.0);
  const auto K = assemble_stiffness(mesh);
  std::ostringstream out;
  K.write_coordinate(out);
  std::istringstream in(out.str());
  int r = 0, c = 0;
  double v = 0.0;
  std::size_t lines = 0;
  double sum = 0.0;
  while (in >> r >> c >> v) {
    ++lines;
    sum += v;
    CHECK(r >= 0);
    CHECK(c < K.dim());
  }
  CHECK(lines == static_cast<std::size_t>(K.matrix().nonZeros()));
  CHECK(std::abs(sum) < 1e-10);
}

TEST_CASE("thin neck test function energy") {
  for (double eps : {0.2, 0.1}) {
    CAPTURE(eps);
    const auto surface = build_surface({ThinNeckComposite{1.0, 0.3, eps, 1.0 / eps}});
    const auto mesh = triangulate(surface, mesh_size(surface, 0.05));
    const auto f = thin_neck_test_function(surface, mesh);
    const double energy = assemble_stiffness(mesh).quad_form(f);
    CHECK(rel(energy, 4.0 * eps * eps) < 0.01);
  }
}

} // TEST_SUITE fem
