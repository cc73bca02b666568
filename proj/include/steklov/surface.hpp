#pragma once

#include "steklov/profile.hpp"
#include "steklov/types.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace steklov {

struct FlatCylinder {
  double R = 1.0;
  double T = 1.0;
};

// Breakpoints [s, r] of a meridian radius profile, s = meridian arclength.
struct RevolutionProfile {
  std::vector<std::array<double, 2>> breakpoints;
};

struct HyperbolicCollar {
  double l = 1.0;
  bool half = true;
};

// Two flat ends of circumference a and length L joined by a neck of
// circumference epsilon and length neck_length.
struct ThinNeckComposite {
  double a = 1.0;
  double L = 0.3;
  double epsilon = 0.1;
  double neck_length = 10.0;
};

// Flat ends of circumference a and length L joined through curvature +1
// shoulders to a curvature -1 neck whose waist has circumference epsilon.
// Gaussian curvature is bounded below by -1 everywhere.
struct HyperbolicNeck {
  double a = 1.0;
  double L = 0.5;
  double epsilon = 0.5;
};

using FamilyParams = std::variant<FlatCylinder, RevolutionProfile, HyperbolicCollar, ThinNeckComposite, HyperbolicNeck>;

struct SurfaceSpec {
  FamilyParams family;
  // Metric scale factor c: the surface carries c^2 times the family metric.
  double scale = 1.0;
};

std::string_view family_name(const FamilyParams& family);
void validate(const SurfaceSpec& spec);

SurfaceSpec surface_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SurfaceSpec& spec);
SurfaceSpec parse_surface_spec(std::string_view text);

struct BoundaryComponent {
  int label = 0;
  double t = 0.0;      // chart location of the circle
  double length = 0.0; // Riemannian length
};

// Metric evaluator for surfaces outside the built-in families.
struct CustomChart {
  std::string name;
  double t_min = 0.0;
  double t_max = 1.0;
  std::function<Metric2(double s, double t)> metric;
};

// Chart [0, 2pi) x [t_min, t_max], s periodic, with first fundamental form
// evaluated pointwise. Immutable after construction.
class MetricSurface {
public:
  // Surfaces of revolution dt^2 + r(t)^2 ds^2, scaled by c^2.
  MetricSurface(std::string family, RadiusProfile profile, double depth, double scale = 1.0);
  static MetricSurface custom(CustomChart chart);

  const std::string& family() const { return family_; }
  bool built_in() const { return profile_.has_value(); }
  const RadiusProfile* profile() const { return profile_ ? &*profile_ : nullptr; }

  double s_period() const { return kTwoPi; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double scale() const { return scale_; }
  // Depth L of the product neighbourhoods of the boundary circles, in metric units.
  double cylindrical_depth() const { return depth_ * scale_; }

  Metric2 metric(double s, double t) const;
  // Circumference of the parallel circle at chart height t.
  double circumference(double t) const;
  double max_circumference() const;
  // Riemannian length of the parallel-circle arc at height t between s0 and s1.
  double arc_length(double t, double s0, double s1) const;

  const std::vector<BoundaryComponent>& boundaries() const { return boundaries_; }
  int boundary_count() const { return static_cast<int>(boundaries_.size()); }

  // Chart heights where the metric changes its analytic form.
  std::vector<double> feature_heights() const;

  MetricSurface scaled(double c) const;

private:
  MetricSurface() = default;
  void init_boundaries();

  std::string family_;
  std::optional<RadiusProfile> profile_;
  std::function<Metric2(double, double)> custom_metric_;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  double depth_ = 0.0;
  double scale_ = 1.0;
  std::vector<BoundaryComponent> boundaries_;
};

MetricSurface build_surface(const SurfaceSpec& spec);

// Declared boundary-circle lengths of a family, from its closed form (scale included).
std::vector<double> declared_boundary_lengths(const SurfaceSpec& spec);

} // namespace steklov
