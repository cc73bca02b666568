#pragma once

#include "steklov/geometry.hpp"

#include <json.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

enum class BoundKind { Lower, Upper };
enum class Verdict { Pass, Fail, NotApplicable };

std::string_view to_string(BoundKind kind);
std::string_view to_string(Verdict verdict);

struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::Lower;
  double value = 0.0;
  int index = 1; // eigenvalue index compared against
  double sigma = 0.0;
  Verdict verdict = Verdict::Pass;
  double margin = 0.0; // (sigma - value)/sigma for lower bounds, (value - sigma)/sigma for upper
  std::string note;

  bool satisfied() const { return verdict != Verdict::Fail; }
};

// Lower: value <= sigma (1 + tol). Upper: value >= sigma (1 - tol).
BoundEntry compare_bound(std::string name, BoundKind kind, double value, int index, double sigma, double tol);
BoundEntry not_applicable(std::string name, BoundKind kind, double value, int index, double sigma, std::string note);

struct BoundReport {
  double tol = 0.02;
  std::vector<BoundEntry> entries;

  BoundEntry& add(std::string name, BoundKind kind, double value, int index, double sigma);
  bool all_satisfied() const;
};

// min{length_sep.lo, L}^2 / (2 (b-1) a area.hi); areaA replaces the area of M.
double bound_length(const GeometryData& geom, const std::optional<Bracket>& areaA = std::nullopt);

struct CurvatureBound {
  double sharp = 0.0;
  double simplified = 0.0;
  bool sharp_applicable = false;      // needs L <= 1
  bool simplified_applicable = false; // needs L <= 1 and a <= diam
  std::string note;                   // failed hypotheses
};

// 1 / (16 b^2 cosh(sqrt(-kappa)))
double curvature_constant(double kappa, int b);
CurvatureBound bound_curvature(const GeometryData& geom);

struct SandwichInterval {
  double lower = 0.0;
  double upper = 0.0;
  int j = 0;
};

// Interval containing sigma_k of a surface whose b boundary circles of length a
// have product neighbourhoods of depth L.
SandwichInterval sandwich_bounds(double a, double L, int b, int k);
// Same with hyperbolic collars of boundary geodesics of length a.
SandwichInterval sandwich_bounds_collar(double a, int b, int k);

struct ConstantsReport {
  int g = 0;
  int b = 0;
  double L_gb = 0.0;
  std::array<double, 14> beta{}; // beta[1] .. beta[13]
  double C1 = 0.0;
  double C2 = 0.0;
  double area = 0.0; // 2 pi (2g - 2 + b)
};

// Throws InvalidArgument for b < 2, g < 0, or g = 0 with b <= 3.
void check_signature(int g, int b);
double bers_constant(int g, int b);
ConstantsReport hyperbolic_constants(int g, int b);

struct HyperbolicBound {
  double lower = 0.0;
  double upper = 0.0;
  bool applicable = false;
  std::string note;
};

// C1 length_n^2 <= sigma_n <= min(C2 length_n / a, 1/arctan(1/sinh(a/2))).
HyperbolicBound bound_hyperbolic(int g, int b, double a, int n, double length_n);

nlohmann::json to_json(const BoundEntry& e);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const CurvatureBound& c);
nlohmann::json to_json(const ConstantsReport& c);
nlohmann::json to_json(const HyperbolicBound& h);

// CSV with columns name, kind, index, value, sigma, verdict, margin.
void write_bound_csv(std::ostream& out, const BoundReport& report);
// CSV with columns name, value.
void write_constants_csv(std::ostream& out, const ConstantsReport& report);

} // namespace steklov
