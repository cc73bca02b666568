#pragma once

#include <array>
#include <span>
#include <vector>

namespace steklov {

// One analytic piece of a meridian radius profile r(t), t in [t0, t1].
//
//   Constant  r = c0
//   Cosh      r = c0 * cosh(t - c1)      (Gaussian curvature -1)
//   Cos       r = c0 * cos(t - c1)       (Gaussian curvature +1)
//   Hermite   cubic with r(t0) = c0, r(t1) = c1, r'(t0) = d0, r'(t1) = d1
struct ProfilePiece {
  enum class Kind { Constant, Cosh, Cos, Hermite };

  Kind kind = Kind::Constant;
  double t0 = 0.0;
  double t1 = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;

  double value(double t) const;
  double slope(double t) const;
  double second(double t) const;
  // Integral of r over the sub-interval [a, b] of the piece.
  double integral(double a, double b) const;
  // Constant radius and zero slope over the whole piece.
  bool flat() const;
  // Gaussian curvature -r''/r is known in closed form (not a Hermite blend).
  bool exact_curvature() const { return kind != Kind::Hermite; }
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

// Piecewise radius profile of a surface of revolution with metric dt^2 + r(t)^2 ds^2.
class RadiusProfile {
public:
  explicit RadiusProfile(std::vector<ProfilePiece> pieces);

  static RadiusProfile constant(double radius, double t0, double t1);
  // C^1 shape-preserving (Fritsch-Carlson) interpolation of [t, r] breakpoints.
  static RadiusProfile pchip(std::span<const std::array<double, 2>> breakpoints);

  double t_min() const { return pieces_.front().t0; }
  double t_max() const { return pieces_.back().t1; }
  double length() const { return t_max() - t_min(); }

  double radius(double t) const;
  double slope(double t) const;
  double second(double t) const;
  double curvature(double t) const { return -second(t) / radius(t); }

  const std::vector<ProfilePiece>& pieces() const { return pieces_; }
  // Piece boundaries including both chart ends, ascending.
  std::vector<double> breakpoints() const;

  // Length of the flat run of pieces starting at the low (resp. high) chart end.
  double flat_depth_low() const;
  double flat_depth_high() const;

  double integral(double a, double b) const;
  Range radius_range(double a, double b) const;
  // Gaussian-curvature range over [a, b]. Hermite pieces are sampled, so
  // `exact` reports whether every contributing piece had a closed form.
  struct CurvatureRange {
    double min = 0.0;
    double max = 0.0;
    bool exact = true;
  };
  CurvatureRange curvature_range(double a, double b) const;

private:
  const ProfilePiece& piece_at(double t) const;
  std::vector<ProfilePiece> pieces_;
};

} // namespace steklov
