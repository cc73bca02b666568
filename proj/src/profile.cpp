#include "steklov/profile.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace steklov {
namespace {

struct HermiteLocal {
  double tau;
  double dt;
};

HermiteLocal local(const ProfilePiece& p, double t) {
  const double dt = p.t1 - p.t0;
  return {(t - p.t0) / dt, dt};
}

// Critical points of r on (a, b) for the piece, appended to `out`.
void critical_points(const ProfilePiece& p, double a, double b, std::vector<double>& out) {
  switch (p.kind) {
  case ProfilePiece::Kind::Constant:
    return;
  case ProfilePiece::Kind::Cosh:
  case ProfilePiece::Kind::Cos:
    if (p.c1 > a && p.c1 < b) out.push_back(p.c1);
    return;
  case ProfilePiece::Kind::Hermite: {
    const double dt = p.t1 - p.t0;
    const double qa = 6.0 * p.c0 - 6.0 * p.c1 + 3.0 * dt * p.d0 + 3.0 * dt * p.d1;
    const double qb = -6.0 * p.c0 + 6.0 * p.c1 - 4.0 * dt * p.d0 - 2.0 * dt * p.d1;
    const double qc = dt * p.d0;
    auto push = [&](double tau) {
      const double t = p.t0 + tau * dt;
      if (t > a && t < b) out.push_back(t);
    };
    if (std::abs(qa) < 1e-14 * (std::abs(qb) + std::abs(qc) + 1e-300)) {
      if (qb != 0.0) push(-qc / qb);
      return;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    if (q != 0.0) {
      push(q / qa);
      push(qc / q);
    } else {
      push(0.0);
    }
    return;
  }
  }
}

} // namespace

double ProfilePiece::value(double t) const {
  switch (kind) {
  case Kind::Constant: return c0;
  case Kind::Cosh: return c0 * std::cosh(t - c1);
  case Kind::Cos: return c0 * std::cos(t - c1);
  case Kind::Hermite: {
    const auto [s, dt] = local(*this, t);
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * c0 + (s3 - 2 * s2 + s) * dt * d0 + (-2 * s3 + 3 * s2) * c1 +
           (s3 - s2) * dt * d1;
  }
  }
  return 0.0;
}

double ProfilePiece::slope(double t) const {
  switch (kind) {
  case Kind::Constant: return 0.0;
  case Kind::Cosh: return c0 * std::sinh(t - c1);
  case Kind::Cos: return -c0 * std::sin(t - c1);
  case Kind::Hermite: {
    const auto [s, dt] = local(*this, t);
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * c0 + (-6 * s2 + 6 * s) * c1) / dt + (3 * s2 - 4 * s + 1) * d0 +
           (3 * s2 - 2 * s) * d1;
  }
  }
  return 0.0;
}

double ProfilePiece::second(double t) const {
  switch (kind) {
  case Kind::Constant: return 0.0;
  case Kind::Cosh: return c0 * std::cosh(t - c1);
  case Kind::Cos: return -c0 * std::cos(t - c1);
  case Kind::Hermite: {
    const auto [s, dt] = local(*this, t);
    return ((12 * s - 6) * c0 + (-12 * s + 6) * c1) / (dt * dt) + ((6 * s - 4) * d0 + (6 * s - 2) * d1) / dt;
  }
  }
  return 0.0;
}

double ProfilePiece::integral(double a, double b) const {
  switch (kind) {
  case Kind::Constant: return c0 * (b - a);
  case Kind::Cosh: return c0 * (std::sinh(b - c1) - std::sinh(a - c1));
  case Kind::Cos: return c0 * (std::sin(b - c1) - std::sin(a - c1));
  case Kind::Hermite: {
    // Antiderivative of the cubic in the local variable.
    const double dt = t1 - t0;
    auto prim = [&](double t) {
      const double s = (t - t0) / dt;
      const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
      return dt * ((0.5 * s4 - s3 + s) * c0 + (0.25 * s4 - 2.0 / 3.0 * s3 + 0.5 * s2) * dt * d0 +
                   (-0.5 * s4 + s3) * c1 + (0.25 * s4 - s3 / 3.0) * dt * d1);
    };
    return prim(b) - prim(a);
  }
  }
  return 0.0;
}

bool ProfilePiece::flat() const {
  switch (kind) {
  case Kind::Constant: return true;
  case Kind::Hermite: return c0 == c1 && d0 == 0.0 && d1 == 0.0;
  default: return false;
  }
}

RadiusProfile::RadiusProfile(std::vector<ProfilePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidArgument("radius profile needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!(p.t1 > p.t0)) throw InvalidArgument("radius profile piece " + std::to_string(i) + " has empty range");
    if (i > 0 && p.t0 != pieces_[i - 1].t1)
      throw InvalidArgument("radius profile pieces are not contiguous at piece " + std::to_string(i));
  }
  const Range r = radius_range(t_min(), t_max());
  if (!(r.min > 0.0) || !std::isfinite(r.max)) throw InvalidArgument("radius profile must stay strictly positive");
}

RadiusProfile RadiusProfile::constant(double radius, double t0, double t1) {
  ProfilePiece p;
  p.kind = ProfilePiece::Kind::Constant;
  p.t0 = t0;
  p.t1 = t1;
  p.c0 = radius;
  return RadiusProfile({p});
}

RadiusProfile RadiusProfile::pchip(std::span<const std::array<double, 2>> bp) {
  const std::size_t n = bp.size();
  if (n < 2) throw InvalidArgument("profile needs at least two breakpoints");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(bp[i][0]) || !std::isfinite(bp[i][1])) throw InvalidArgument("profile breakpoint is not finite");
    if (!(bp[i][1] > 0.0)) throw InvalidArgument("profile radius must be strictly positive");
    if (i > 0 && !(bp[i][0] > bp[i - 1][0])) throw InvalidArgument("profile arclengths must be strictly increasing");
  }
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = bp[i + 1][0] - bp[i][0];
    delta[i] = (bp[i + 1][1] - bp[i][1]) / h[i];
  }
  auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
  if (n == 2) {
    d[0] = d[1] = delta[0];
  } else {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    auto edge = [&](double h0, double h1, double m0, double m1) {
      double e = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
      if (sgn(e) != sgn(m0)) e = 0.0;
      else if (sgn(m0) != sgn(m1) && std::abs(e) > 3.0 * std::abs(m0)) e = 3.0 * m0;
      return e;
    };
    d[0] = edge(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
  std::vector<ProfilePiece> pieces;
  pieces.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ProfilePiece p;
    p.t0 = bp[i][0];
    p.t1 = bp[i + 1][0];
    if (delta[i] == 0.0 && d[i] == 0.0 && d[i + 1] == 0.0) {
      p.kind = ProfilePiece::Kind::Constant;
      p.c0 = bp[i][1];
    } else {
      p.kind = ProfilePiece::Kind::Hermite;
      p.c0 = bp[i][1];
      p.c1 = bp[i + 1][1];
      p.d0 = d[i];
      p.d1 = d[i + 1];
    }
    pieces.push_back(p);
  }
  return RadiusProfile(std::move(pieces));
}

const ProfilePiece& RadiusProfile::piece_at(double t) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double v, const ProfilePiece& p) { return v < p.t1; });
  if (it == pieces_.end()) return pieces_.back();
  return *it;
}

double RadiusProfile::radius(double t) const { return piece_at(t).value(t); }
double RadiusProfile::slope(double t) const { return piece_at(t).slope(t); }
double RadiusProfile::second(double t) const { return piece_at(t).second(t); }

std::vector<double> RadiusProfile::breakpoints() const {
  std::vector<double> out;
  out.reserve(pieces_.size() + 1);
  for (const auto& p : pieces_) out.push_back(p.t0);
  out.push_back(pieces_.back().t1);
  return out;
}

double RadiusProfile::flat_depth_low() const {
  const double r0 = pieces_.front().value(t_min());
  double end = t_min();
  for (const auto& p : pieces_) {
    if (!p.flat() || p.value(p.t0) != r0) break;
    end = p.t1;
  }
  return end - t_min();
}

double RadiusProfile::flat_depth_high() const {
  const double r1 = pieces_.back().value(t_max());
  double start = t_max();
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (!it->flat() || it->value(it->t0) != r1) break;
    start = it->t0;
  }
  return t_max() - start;
}

double RadiusProfile::integral(double a, double b) const {
  double sum = 0.0;
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.t0);
    const double hi = std::min(b, p.t1);
    if (hi > lo) sum += p.integral(lo, hi);
  }
  return sum;
}

Range RadiusProfile::radius_range(double a, double b) const {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  std::vector<double> pts;
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.t0);
    const double hi = std::min(b, p.t1);
    if (hi < lo) continue;
    pts.assign({lo, hi});
    critical_points(p, lo, hi, pts);
    for (double t : pts) {
      const double v = p.value(t);
      r.min = std::min(r.min, v);
      r.max = std::max(r.max, v);
    }
  }
  return r;
}

RadiusProfile::CurvatureRange RadiusProfile::curvature_range(double a, double b) const {
  CurvatureRange out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), true};
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.t0);
    const double hi = std::min(b, p.t1);
    if (hi <= lo) continue;
    switch (p.kind) {
    case ProfilePiece::Kind::Constant:
      out.min = std::min(out.min, 0.0);
      out.max = std::max(out.max, 0.0);
      break;
    case ProfilePiece::Kind::Cosh:
      out.min = std::min(out.min, -1.0);
      out.max = std::max(out.max, -1.0);
      break;
    case ProfilePiece::Kind::Cos:
      out.min = std::min(out.min, 1.0);
      out.max = std::max(out.max, 1.0);
      break;
    case ProfilePiece::Kind::Hermite: {
      out.exact = false;
      constexpr int samples = 512;
      for (int i = 0; i <= samples; ++i) {
        const double t = lo + (hi - lo) * i / samples;
        const double k = -p.second(t) / p.value(t);
        out.min = std::min(out.min, k);
        out.max = std::max(out.max, k);
      }
      break;
    }
    }
  }
  if (out.min > out.max) out.min = out.max = 0.0;
  return out;
}

} // namespace steklov
