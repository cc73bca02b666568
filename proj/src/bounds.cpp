#include "steklov/bounds.hpp"

#include "steklov/error.hpp"
#include "steklov/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace steklov {
namespace {

double relative_margin(BoundKind kind, double value, double sigma) {
  const double diff = kind == BoundKind::Lower ? sigma - value : value - sigma;
  return sigma != 0.0 ? diff / std::abs(sigma) : diff;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " is not finite");
}

int band_index(int b, int k) {
  if (b < 1) throw InvalidArgument("boundary count must be at least 1");
  if (k < 0) throw InvalidArgument("eigenvalue index must be non-negative");
  // (2j - 1) b <= k < (2j + 1) b
  return (k + b) / (2 * b);
}

SandwichInterval sandwich_from_depth(double a, double depth, int b, int k) {
  SandwichInterval out;
  out.j = band_index(b, k);
  if (out.j == 0) {
    out.upper = 1.0 / depth;
    return out;
  }
  const double m = kTwoPi * out.j / a;
  out.lower = m * std::tanh(m * depth);
  out.upper = m / std::tanh(m * depth);
  return out;
}

} // namespace

std::string_view to_string(BoundKind kind) { return kind == BoundKind::Lower ? "lower" : "upper"; }

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
  case Verdict::Pass: return "pass";
  case Verdict::Fail: return "fail";
  case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

BoundEntry compare_bound(std::string name, BoundKind kind, double value, int index, double sigma, double tol) {
  BoundEntry e;
  e.name = std::move(name);
  e.kind = kind;
  e.value = value;
  e.index = index;
  e.sigma = sigma;
  const bool ok = kind == BoundKind::Lower ? value <= sigma * (1.0 + tol) : value >= sigma * (1.0 - tol);
  e.verdict = ok ? Verdict::Pass : Verdict::Fail;
  e.margin = relative_margin(kind, value, sigma);
  return e;
}

BoundEntry not_applicable(std::string name, BoundKind kind, double value, int index, double sigma, std::string note) {
  BoundEntry e;
  e.name = std::move(name);
  e.kind = kind;
  e.value = value;
  e.index = index;
  e.sigma = sigma;
  e.verdict = Verdict::NotApplicable;
  e.margin = relative_margin(kind, value, sigma);
  e.note = std::move(note);
  return e;
}

BoundEntry& BoundReport::add(std::string name, BoundKind kind, double value, int index, double sigma) {
  entries.push_back(compare_bound(std::move(name), kind, value, index, sigma, tol));
  return entries.back();
}

bool BoundReport::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.satisfied(); });
}

double bound_length(const GeometryData& geom, const std::optional<Bracket>& areaA) {
  if (geom.b < 2) throw InvalidArgument("length bound needs at least two boundary components");
  const double area = areaA ? areaA->hi : geom.area.hi;
  if (!(area > 0.0)) throw InvalidArgument("area bracket must be positive");
  if (!(geom.a > 0.0)) throw InvalidArgument("boundary length must be positive");
  const double m = std::max(0.0, std::min(geom.length_sep.lo, geom.L));
  return m * m / (2.0 * (geom.b - 1) * geom.a * area);
}

double curvature_constant(double kappa, int b) {
  if (!(kappa < 0.0)) throw InvalidArgument("curvature bound needs kappa < 0");
  if (b < 1) throw InvalidArgument("boundary count must be at least 1");
  return 1.0 / (16.0 * b * b * std::cosh(std::sqrt(-kappa)));
}

CurvatureBound bound_curvature(const GeometryData& geom) {
  if (!(geom.kappa < 0.0)) throw InvalidArgument("curvature bound needs kappa < 0");
  if (geom.b < 2) throw InvalidArgument("curvature bound needs at least two boundary components");
  require_finite(geom.kappa, "kappa");
  const double k = std::sqrt(-geom.kappa);
  const double inj = geom.inj_bd.lo;
  const double diam = geom.diam_bd.hi;
  const double a = geom.a;
  const int b = geom.b;
  if (!(a > 0.0) || !(diam > 0.0)) throw InvalidArgument("boundary length and diameter must be positive");

  CurvatureBound out;
  const double tube = 2.0 * (b - 1) * diam * std::sinh(k * inj) / k;
  const double denom = 8.0 * (b - 1) * a * (a * b * inj + tube);
  out.sharp = denom > 0.0 ? inj * inj / denom : 0.0;
  out.simplified = curvature_constant(geom.kappa, b) * inj / (a * diam);

  const bool depth_ok = geom.L <= 1.0;
  const bool diam_ok = a <= geom.diam_bd.lo;
  out.sharp_applicable = depth_ok;
  out.simplified_applicable = depth_ok && diam_ok;
  if (!depth_ok) out.note = "L > 1";
  if (!diam_ok) out.note += out.note.empty() ? "a > diam" : "; a > diam";
  return out;
}

SandwichInterval sandwich_bounds(double a, double L, int b, int k) {
  if (!(a > 0.0) || !(L > 0.0)) throw InvalidArgument("a and L must be positive");
  return sandwich_from_depth(a, L, b, k);
}

SandwichInterval sandwich_bounds_collar(double a, int b, int k) {
  if (!(a > 0.0)) throw InvalidArgument("a must be positive");
  return sandwich_from_depth(a, collar_depth(a), b, k);
}

void check_signature(int g, int b) {
  if (g < 0) throw InvalidArgument("genus must be non-negative");
  if (b < 2) throw InvalidArgument("signature needs at least two boundary components");
  if (g == 0 && b <= 3) throw InvalidArgument("signature excluded: needs g != 0 or b > 3");
}

double bers_constant(int g, int b) {
  check_signature(g, b);
  const double n = g + b;
  return 4.0 * (3.0 * n - 3.0) * std::log(8.0 * kPi * (n - 1.0) / (3.0 * n - 3.0));
}

ConstantsReport hyperbolic_constants(int g, int b) {
  check_signature(g, b);
  ConstantsReport r;
  r.g = g;
  r.b = b;
  r.L_gb = bers_constant(g, b);
  const double as1 = std::asinh(1.0);
  const double chi = 2.0 * g - 2.0 + b;
  const double pants = 3.0 * g - 3.0 + b;
  r.area = kTwoPi * chi;
  auto& be = r.beta;
  be[1] = pants * r.L_gb;
  be[2] = 1.0 / std::atan(1.0 / std::sinh(0.5));
  be[3] = (kPi / as1) * std::tanh(kPi / (as1 * std::atan(1.0)));
  be[4] = as1 / (kTwoPi * chi);
  be[5] = collar_width(r.L_gb);
  be[6] = be[5] / (kTwoPi * chi);
  be[7] = pants * kTwoPi * chi;
  const double inv1 = 1.0 / be[1];
  be[8] = std::min({inv1, be[4] * inv1, be[6] * inv1, 1.0 / be[7]});
  be[9] = be[5] / (2.0 * as1 * b);
  be[10] = 1.0 / (pants * 2.0 * as1 * b);
  be[11] = std::min({inv1, inv1 / (2.0 * b), be[9] * inv1, be[10]});
  be[12] = be[8] * be[11] / 4.0;
  be[13] = std::min(be[3] * inv1 * inv1, be[12]);
  r.C1 = be[13];
  r.C2 = std::max(8.0 * as1 / kPi, be[2]);
  return r;
}

HyperbolicBound bound_hyperbolic(int g, int b, double a, int n, double length_n) {
  if (!(a > 0.0)) throw InvalidArgument("a must be positive");
  if (!(length_n >= 0.0)) throw InvalidArgument("length_n must be non-negative");
  const ConstantsReport c = hyperbolic_constants(g, b);
  HyperbolicBound out;
  out.lower = c.C1 * length_n * length_n;
  out.upper = std::min(c.C2 * length_n / a, 1.0 / collar_depth(a));
  const bool a_ok = a <= 2.0 * std::asinh(1.0);
  const bool n_ok = n >= 1 && n < b;
  out.applicable = a_ok && n_ok;
  if (!a_ok) out.note = "a > 2 arcsinh(1)";
  if (!n_ok) out.note += out.note.empty() ? "n outside [1, b)" : "; n outside [1, b)";
  return out;
}

nlohmann::json to_json(const BoundEntry& e) {
  nlohmann::json j{{"name", e.name},   {"kind", to_string(e.kind)}, {"value", e.value},
                   {"index", e.index}, {"sigma", e.sigma},          {"verdict", to_string(e.verdict)},
                   {"margin", e.margin}};
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return {{"tol", r.tol}, {"entries", entries}};
}

nlohmann::json to_json(const CurvatureBound& c) {
  return {{"sharp", c.sharp},
          {"simplified", c.simplified},
          {"sharp_applicable", c.sharp_applicable},
          {"simplified_applicable", c.simplified_applicable},
          {"note", c.note}};
}

nlohmann::json to_json(const ConstantsReport& c) {
  nlohmann::json j{{"g", c.g}, {"b", c.b}, {"L_gb", c.L_gb}, {"area", c.area}};
  for (int i = 1; i <= 13; ++i) j["beta" + std::to_string(i)] = c.beta[i];
  j["C1"] = c.C1;
  j["C2"] = c.C2;
  return j;
}

nlohmann::json to_json(const HyperbolicBound& h) {
  return {{"lower", h.lower}, {"upper", h.upper}, {"applicable", h.applicable}, {"note", h.note}};
}

void write_bound_csv(std::ostream& out, const BoundReport& report) {
  const auto old = out.precision(17);
  out << "name,kind,index,value,sigma,verdict,margin\n";
  for (const auto& e : report.entries)
    out << e.name << ',' << to_string(e.kind) << ',' << e.index << ',' << e.value << ',' << e.sigma << ','
        << to_string(e.verdict) << ',' << e.margin << '\n';
  out.precision(old);
}

void write_constants_csv(std::ostream& out, const ConstantsReport& c) {
  const auto old = out.precision(17);
  out << "name,value\n";
  out << "g," << c.g << "\nb," << c.b << "\nL_gb," << c.L_gb << '\n';
  for (int i = 1; i <= 13; ++i) out << "beta" << i << ',' << c.beta[i] << '\n';
  out << "C1," << c.C1 << "\nC2," << c.C2 << '\n';
  out.precision(old);
}

} // namespace steklov
