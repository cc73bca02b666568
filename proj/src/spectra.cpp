#include "steklov/spectra.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace steklov {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be positive and finite");
}

void require_count(int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
}

int rank(ModeType m) {
  switch (m) {
  case ModeType::Constant: return 0;
  case ModeType::Linear: return 1;
  case ModeType::Tanh: return 2;
  case ModeType::Coth: return 3;
  }
  return 4;
}

void finish(std::vector<ClosedFormEigenvalue>& e, int k) {
  std::stable_sort(e.begin(), e.end(), [](const ClosedFormEigenvalue& x, const ClosedFormEigenvalue& y) {
    return std::make_tuple(x.value, rank(x.mode), x.j) < std::make_tuple(y.value, rank(y.mode), y.j);
  });
  e.resize(static_cast<std::size_t>(k) + 1);
}

double coth(double x) { return 1.0 / std::tanh(x); }

} // namespace

std::string_view to_string(ModeType mode) {
  switch (mode) {
  case ModeType::Constant: return "const";
  case ModeType::Linear: return "linear";
  case ModeType::Tanh: return "tanh";
  case ModeType::Coth: return "coth";
  }
  return "?";
}

std::vector<double> ClosedFormSpectrum::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.value);
  return v;
}

ClosedFormSpectrum cylinder_steklov(double R, double T, int k) {
  require_positive(R, "R");
  require_positive(T, "T");
  require_count(k);
  std::vector<ClosedFormEigenvalue> e;
  e.push_back({0.0, 0, ModeType::Constant});
  e.push_back({1.0 / T, 0, ModeType::Linear});
  // w tanh(wT) increases with w, so the tanh pairs up to jmax already supply k+1 values
  // below every mode with larger j.
  const int jmax = k / 2 + 2;
  for (int j = 1; j <= jmax; ++j) {
    const double w = j / R;
    const double th = w * std::tanh(w * T);
    const double ct = w * coth(w * T);
    for (int c = 0; c < 2; ++c) {
      e.push_back({th, j, ModeType::Tanh});
      e.push_back({ct, j, ModeType::Coth});
    }
  }
  finish(e, k);
  return {e};
}

double rho() {
  // f(x) = x tanh x - 1 is increasing on (0, inf); f(1) < 0 < f(1.5).
  double lo = 1.0, hi = 1.5;
  double x = 1.2;
  for (int it = 0; it < 100; ++it) {
    const double t = std::tanh(x);
    const double f = x * t - 1.0;
    if (f < 0.0) lo = x;
    else hi = x;
    const double df = t + x * (1.0 - t * t);
    double nx = x - f / df;
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) <= 1e-16 * x) {
      x = nx;
      break;
    }
    x = nx;
  }
  return x;
}

ClosedFormSpectrum cylinder_mixed(double a, double L, MixedKind kind, int k) {
  require_positive(a, "a");
  require_positive(L, "L");
  require_count(k);
  std::vector<ClosedFormEigenvalue> e;
  if (kind == MixedKind::Neumann) e.push_back({0.0, 0, ModeType::Constant});
  else e.push_back({1.0 / L, 0, ModeType::Linear});
  const int jmax = k / 2 + 1;
  for (int j = 1; j <= jmax; ++j) {
    const double w = kTwoPi * j / a;
    const double v = kind == MixedKind::Neumann ? w * std::tanh(w * L) : w * coth(w * L);
    const ModeType m = kind == MixedKind::Neumann ? ModeType::Tanh : ModeType::Coth;
    e.push_back({v, j, m});
    e.push_back({v, j, m});
  }
  finish(e, k);
  return {e};
}

double collar_width(double l) {
  require_positive(l, "l");
  if (l < 1e-6) {
    // 1/sinh(l/2) = 2/l - l/12 + ..., arcsinh(x) = log(2x) + 1/(4x^2) for large x.
    const double x = 2.0 / l - l / 12.0;
    return std::log(2.0 * x) + 1.0 / (4.0 * x * x);
  }
  if (l > 50.0) {
    // 1/sinh(l/2) ~ 2 exp(-l/2) and arcsinh(y) ~ y for tiny y.
    const double y = 2.0 * std::exp(-0.5 * l) / (1.0 - std::exp(-l));
    return y - y * y * y / 6.0;
  }
  return std::asinh(1.0 / std::sinh(0.5 * l));
}

double collar_depth(double a) {
  require_positive(a, "a");
  return std::atan2(1.0, std::sinh(0.5 * a));
}

ClosedFormSpectrum collar_mixed(double a, MixedKind kind, int k) {
  return cylinder_mixed(a, collar_depth(a), kind, k);
}

double collar_test_energy(double l) { return l / collar_depth(l); }

} // namespace steklov
