#pragma once

#include <array>
#include <string_view>

namespace steklov {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Symmetric 2x2 first fundamental form in chart coordinates (s, t).
struct Metric2 {
  double g11 = 1.0;
  double g12 = 0.0;
  double g22 = 1.0;

  double det() const { return g11 * g22 - g12 * g12; }
  bool positive_definite() const { return g11 > 0.0 && det() > 0.0; }
  Metric2 inverse() const {
    const double d = det();
    return {g22 / d, -g12 / d, g11 / d};
  }
  Metric2 scaled(double factor) const { return {g11 * factor, g12 * factor, g22 * factor}; }
  // Squared length of the chart vector (ds, dt).
  double norm2(double ds, double dt) const { return g11 * ds * ds + 2.0 * g12 * ds * dt + g22 * dt * dt; }
};

// Condition imposed on the inner boundary of a mixed problem.
enum class MixedKind { Neumann, Dirichlet };

enum class ProblemKind { Steklov, MixedNeumann, MixedDirichlet };

constexpr std::string_view to_string(MixedKind kind) {
  return kind == MixedKind::Neumann ? "N" : "D";
}

constexpr std::string_view to_string(ProblemKind kind) {
  switch (kind) {
  case ProblemKind::Steklov: return "steklov";
  case ProblemKind::MixedNeumann: return "mixed-N";
  case ProblemKind::MixedDirichlet: return "mixed-D";
  }
  return "?";
}

} // namespace steklov
