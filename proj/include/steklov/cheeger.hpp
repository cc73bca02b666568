#pragma once

#include "steklov/mesh.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <vector>

namespace steklov {

struct SweepRecord {
  double t = 0.0;
  double perimeter = 0.0; // length of {u = t}
  double area = 0.0;      // |{u > t}|
  double trace = 0.0;     // length of {u > t} on the boundary
  int components = 0;     // connected components of {u > t}
  int complement_components = 0;
  int interior_components = 0; // components of {u > t} without a boundary vertex
  bool complement_touches_boundary = false;
  bool admissible = false;
};

struct LevelSetSweep {
  std::vector<SweepRecord> records; // ascending t
  double total_area = 0.0;
  bool flipped = false; // u was replaced by -u so that |{u > 0}| <= |M|/2
};

// Superlevel sets of the P1 interpolant of u at the midpoints between
// consecutive distinct vertex values, restricted to t >= 0.
LevelSetSweep level_set_sweep(const TriMesh& mesh, const Eigen::VectorXd& u);

struct CheegerEstimate {
  double h1 = 0.0;
  double h2 = 0.0;
  double bound = 0.0; // h1 * h2 / 4
  double t_h1 = 0.0;
  double t_h2 = 0.0;
  std::size_t admissible = 0;
};

CheegerEstimate cheeger_estimate(const LevelSetSweep& sweep);

// Thresholds strictly between min u and max u at which some component of
// {u > t} or of {u < t} contains no boundary vertex.
struct MaxPrincipleReport {
  std::size_t thresholds = 0;
  std::size_t violations = 0;
};
MaxPrincipleReport max_principle_check(const TriMesh& mesh, const Eigen::VectorXd& u);

// CSV with columns t, perimeter, area, trace, admissible.
void write_sweep_csv(std::ostream& out, const LevelSetSweep& sweep);

} // namespace steklov
