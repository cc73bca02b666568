#pragma once

#include "steklov/mesh.hpp"
#include "steklov/surface.hpp"
#include "steklov/types.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

namespace steklov::test {

// Frozen high-precision values (mpmath, 30 digits).
inline constexpr double kRho = 1.19967864025773383;
inline constexpr double kTanh1 = 0.761594155955764888;
inline constexpr double kCoth1 = 1.31303528549933130;
inline constexpr double k2Tanh2 = 1.92805516015163377;
inline constexpr double k2Coth2 = 2.07462944145509619;
inline constexpr double k2Asinh1 = 1.76274717403908605;
inline constexpr double kAsinh1 = 0.881373587019543025;
inline constexpr double kCollarSigma1N = 3.53813710734365065;
inline constexpr double k4OverPi = 1.27323954473516269;
inline constexpr double kBeta2 = 0.917081820109266693;
inline constexpr double kC2 = 2.24439940935672051;
inline constexpr double kCm1b2 = 0.0101258480259982094;

inline double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

inline MetricSurface cylinder(double R, double T) { return build_surface({FlatCylinder{R, T}}); }

inline MetricSurface half_collar(double l) { return build_surface({HyperbolicCollar{l, true}}); }

} // namespace steklov::test
