#include "steklov/surface.hpp"

#include "steklov/error.hpp"
#include "steklov/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace steklov {
namespace {

using json = nlohmann::json;

void positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be positive and finite");
}

ProfilePiece constant_piece(double r, double t0, double t1) {
  ProfilePiece p;
  p.kind = ProfilePiece::Kind::Constant;
  p.t0 = t0;
  p.t1 = t1;
  p.c0 = r;
  return p;
}

ProfilePiece hermite_piece(double r0, double r1, double t0, double t1) {
  ProfilePiece p;
  p.kind = ProfilePiece::Kind::Hermite;
  p.t0 = t0;
  p.t1 = t1;
  p.c0 = r0;
  p.c1 = r1;
  return p;
}

ProfilePiece analytic_piece(ProfilePiece::Kind kind, double amplitude, double center, double t0, double t1) {
  ProfilePiece p;
  p.kind = kind;
  p.t0 = t0;
  p.t1 = t1;
  p.c0 = amplitude;
  p.c1 = center;
  return p;
}

RadiusProfile thin_neck_profile(const ThinNeckComposite& p) {
  const double ra = p.a / kTwoPi;
  const double re = p.epsilon / kTwoPi;
  const double w = std::min(p.L, p.epsilon) / 4.0;
  double t = 0.0;
  std::vector<ProfilePiece> pieces;
  pieces.push_back(constant_piece(ra, t, t + p.L));
  t += p.L;
  pieces.push_back(hermite_piece(ra, re, t, t + w));
  t += w;
  pieces.push_back(constant_piece(re, t, t + p.neck_length));
  t += p.neck_length;
  pieces.push_back(hermite_piece(re, ra, t, t + w));
  t += w;
  pieces.push_back(constant_piece(ra, t, t + p.L));
  return RadiusProfile(std::move(pieces));
}

RadiusProfile hyperbolic_neck_profile(const HyperbolicNeck& p) {
  const double r0 = p.a / kTwoPi;
  const double rc = p.epsilon / kTwoPi;
  // r0 cos(u) = rc cosh(v) and r0 sin(u) = rc sinh(v) give a C^1 junction.
  const double v = 0.5 * std::acosh((r0 * r0) / (rc * rc));
  const double u = std::atan(std::tanh(v));
  using K = ProfilePiece::Kind;
  double t = 0.0;
  std::vector<ProfilePiece> pieces;
  pieces.push_back(constant_piece(r0, t, p.L));
  t = p.L;
  pieces.push_back(analytic_piece(K::Cos, r0, t, t, t + u));
  t += u;
  const double waist = t + v;
  pieces.push_back(analytic_piece(K::Cosh, rc, waist, t, t + 2.0 * v));
  t += 2.0 * v;
  pieces.push_back(analytic_piece(K::Cos, r0, t + u, t, t + u));
  t += u;
  pieces.push_back(constant_piece(r0, t, t + p.L));
  return RadiusProfile(std::move(pieces));
}

double periodic_trapezoid(const std::function<double(double)>& f) {
  constexpr int n = 128;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(kTwoPi * i / n);
  return sum * kTwoPi / n;
}

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

} // namespace

std::string_view family_name(const FamilyParams& family) {
  struct V {
    std::string_view operator()(const FlatCylinder&) const { return "flat_cylinder"; }
    std::string_view operator()(const RevolutionProfile&) const { return "revolution_profile"; }
    std::string_view operator()(const HyperbolicCollar&) const { return "hyperbolic_collar"; }
    std::string_view operator()(const ThinNeckComposite&) const { return "thin_neck"; }
    std::string_view operator()(const HyperbolicNeck&) const { return "hyperbolic_neck"; }
  };
  return std::visit(V{}, family);
}

void validate(const SurfaceSpec& spec) {
  positive(spec.scale, "scale");
  struct V {
    void operator()(const FlatCylinder& p) const {
      positive(p.R, "R");
      positive(p.T, "T");
    }
    void operator()(const RevolutionProfile& p) const {
      // Interpolation performs the remaining checks.
      (void)RadiusProfile::pchip(p.breakpoints);
    }
    void operator()(const HyperbolicCollar& p) const { positive(p.l, "l"); }
    void operator()(const ThinNeckComposite& p) const {
      positive(p.a, "a");
      positive(p.L, "L");
      positive(p.epsilon, "epsilon");
      positive(p.neck_length, "neck_length");
      if (!(p.epsilon < p.L)) throw InvalidArgument("thin neck requires epsilon < L");
    }
    void operator()(const HyperbolicNeck& p) const {
      positive(p.a, "a");
      positive(p.L, "L");
      positive(p.epsilon, "epsilon");
      if (!(p.epsilon < p.a)) throw InvalidArgument("hyperbolic neck requires epsilon < a");
    }
  };
  std::visit(V{}, spec.family);
}

SurfaceSpec surface_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("surface spec must be a JSON object");
  const auto family = field<std::string>(doc, "family");
  SurfaceSpec spec;
  if (family == "flat_cylinder") {
    spec.family = FlatCylinder{field<double>(doc, "R"), field<double>(doc, "T")};
  } else if (family == "revolution_profile") {
    RevolutionProfile p;
    p.breakpoints = field<std::vector<std::array<double, 2>>>(doc, "profile");
    spec.family = std::move(p);
  } else if (family == "hyperbolic_collar") {
    HyperbolicCollar p{field<double>(doc, "l"), true};
    if (doc.contains("half")) p.half = field<bool>(doc, "half");
    spec.family = p;
  } else if (family == "thin_neck") {
    ThinNeckComposite p;
    p.a = field<double>(doc, "a");
    p.L = field<double>(doc, "L");
    p.epsilon = field<double>(doc, "epsilon");
    p.neck_length = doc.contains("neck_length") ? field<double>(doc, "neck_length") : 1.0 / p.epsilon;
    spec.family = p;
  } else if (family == "hyperbolic_neck") {
    spec.family = HyperbolicNeck{field<double>(doc, "a"), field<double>(doc, "L"), field<double>(doc, "epsilon")};
  } else {
    throw ParseError("unknown surface family '" + family + "'");
  }
  if (doc.contains("scale")) spec.scale = field<double>(doc, "scale");
  validate(spec);
  return spec;
}

SurfaceSpec parse_surface_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return surface_spec_from_json(doc);
}

json to_json(const SurfaceSpec& spec) {
  json doc;
  doc["family"] = std::string(family_name(spec.family));
  struct V {
    json& d;
    void operator()(const FlatCylinder& p) const {
      d["R"] = p.R;
      d["T"] = p.T;
    }
    void operator()(const RevolutionProfile& p) const { d["profile"] = p.breakpoints; }
    void operator()(const HyperbolicCollar& p) const {
      d["l"] = p.l;
      d["half"] = p.half;
    }
    void operator()(const ThinNeckComposite& p) const {
      d["a"] = p.a;
      d["L"] = p.L;
      d["epsilon"] = p.epsilon;
      d["neck_length"] = p.neck_length;
    }
    void operator()(const HyperbolicNeck& p) const {
      d["a"] = p.a;
      d["L"] = p.L;
      d["epsilon"] = p.epsilon;
    }
  };
  std::visit(V{doc}, spec.family);
  if (spec.scale != 1.0) doc["scale"] = spec.scale;
  return doc;
}

MetricSurface::MetricSurface(std::string family, RadiusProfile profile, double depth, double scale)
    : family_(std::move(family)), profile_(std::move(profile)), t_min_(profile_->t_min()),
      t_max_(profile_->t_max()), depth_(depth), scale_(scale) {
  positive(scale, "scale");
  if (depth < 0.0) throw InvalidArgument("cylindrical depth must be non-negative");
  init_boundaries();
}

MetricSurface MetricSurface::custom(CustomChart chart) {
  if (!chart.metric) throw InvalidArgument("custom chart needs a metric evaluator");
  if (!(chart.t_max > chart.t_min)) throw InvalidArgument("custom chart has an empty t range");
  MetricSurface m;
  m.family_ = chart.name.empty() ? "custom" : chart.name;
  m.custom_metric_ = std::move(chart.metric);
  m.t_min_ = chart.t_min;
  m.t_max_ = chart.t_max;
  m.init_boundaries();
  return m;
}

void MetricSurface::init_boundaries() {
  boundaries_ = {{0, t_min_, circumference(t_min_)}, {1, t_max_, circumference(t_max_)}};
  for (const auto& b : boundaries_)
    if (!(b.length > 0.0)) throw InvalidArgument("boundary circle has zero length");
}

Metric2 MetricSurface::metric(double s, double t) const {
  if (profile_) {
    const double r = profile_->radius(t);
    const double c2 = scale_ * scale_;
    return {c2 * r * r, 0.0, c2};
  }
  const Metric2 g = custom_metric_(s, t);
  return g.scaled(scale_ * scale_);
}

double MetricSurface::circumference(double t) const {
  if (profile_) return kTwoPi * scale_ * profile_->radius(t);
  return periodic_trapezoid([&](double s) { return std::sqrt(metric(s, t).g11); });
}

double MetricSurface::max_circumference() const {
  if (profile_) return kTwoPi * scale_ * profile_->radius_range(t_min_, t_max_).max;
  double best = 0.0;
  constexpr int n = 256;
  for (int i = 0; i <= n; ++i) best = std::max(best, circumference(t_min_ + (t_max_ - t_min_) * i / n));
  return best;
}

double MetricSurface::arc_length(double t, double s0, double s1) const {
  if (profile_) return scale_ * profile_->radius(t) * (s1 - s0);
  // Eight-point Gauss-Legendre on the arc.
  static constexpr double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static constexpr double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    sum += w[i] * (std::sqrt(metric(mid - half * x[i], t).g11) + std::sqrt(metric(mid + half * x[i], t).g11));
  return sum * half;
}

std::vector<double> MetricSurface::feature_heights() const {
  if (profile_) return profile_->breakpoints();
  return {t_min_, t_max_};
}

MetricSurface MetricSurface::scaled(double c) const {
  positive(c, "scale factor");
  MetricSurface m = *this;
  m.scale_ = scale_ * c;
  m.init_boundaries();
  return m;
}

MetricSurface build_surface(const SurfaceSpec& spec) {
  validate(spec);
  struct V {
    MetricSurface operator()(const FlatCylinder& p) const {
      return MetricSurface("flat_cylinder", RadiusProfile::constant(p.R, -p.T, p.T), p.T);
    }
    MetricSurface operator()(const RevolutionProfile& p) const {
      auto prof = RadiusProfile::pchip(p.breakpoints);
      const double depth = std::min({prof.flat_depth_low(), prof.flat_depth_high(), 0.5 * prof.length()});
      return MetricSurface("revolution_profile", std::move(prof), depth);
    }
    MetricSurface operator()(const HyperbolicCollar& p) const {
      const double w = collar_width(p.l);
      const double t0 = p.half ? 0.0 : -w;
      auto piece = analytic_piece(ProfilePiece::Kind::Cosh, p.l / kTwoPi, 0.0, t0, w);
      return MetricSurface("hyperbolic_collar", RadiusProfile({piece}), 0.0);
    }
    MetricSurface operator()(const ThinNeckComposite& p) const {
      return MetricSurface("thin_neck", thin_neck_profile(p), p.L);
    }
    MetricSurface operator()(const HyperbolicNeck& p) const {
      return MetricSurface("hyperbolic_neck", hyperbolic_neck_profile(p), p.L);
    }
  };
  MetricSurface m = std::visit(V{}, spec.family);
  if (spec.scale != 1.0) m = m.scaled(spec.scale);
  const auto declared = declared_boundary_lengths(spec);
  for (std::size_t i = 0; i < declared.size(); ++i) {
    const double got = m.boundaries()[i].length;
    if (std::abs(got - declared[i]) > 1e-12 * declared[i]) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "boundary " << i << " length " << got << " disagrees with declared " << declared[i];
      throw InvalidArgument(msg.str());
    }
  }
  return m;
}

std::vector<double> declared_boundary_lengths(const SurfaceSpec& spec) {
  struct V {
    std::vector<double> operator()(const FlatCylinder& p) const { return {kTwoPi * p.R, kTwoPi * p.R}; }
    std::vector<double> operator()(const RevolutionProfile& p) const {
      return {kTwoPi * p.breakpoints.front()[1], kTwoPi * p.breakpoints.back()[1]};
    }
    std::vector<double> operator()(const HyperbolicCollar& p) const {
      const double outer = p.l / std::tanh(0.5 * p.l);
      if (p.half) return {p.l, outer};
      return {outer, outer};
    }
    std::vector<double> operator()(const ThinNeckComposite& p) const { return {p.a, p.a}; }
    std::vector<double> operator()(const HyperbolicNeck& p) const { return {p.a, p.a}; }
  };
  auto out = std::visit(V{}, spec.family);
  for (double& v : out) v *= spec.scale;
  return out;
}

} // namespace steklov
