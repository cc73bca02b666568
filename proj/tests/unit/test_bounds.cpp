#include "support.hpp"

#include "steklov/bounds.hpp"
#include "steklov/spectra.hpp"
#include "steklov/error.hpp"
#include "steklov/zoo.hpp"

#include <doctest.h>

#include <sstream>

using namespace steklov;
using namespace steklov::test;

namespace {

GeometryData synthetic() {
  GeometryData g;
  g.b = 2;
  g.a = 1.0;
  g.L = 0.8;
  g.area = {3.0, 3.2};
  g.length_sep = {0.5, 0.6};
  g.inj_bd = {0.5, 0.8};
  g.diam_bd = {1.8, 2.0};
  g.kappa = -1.0;
  g.boundary_lengths = {1.0, 1.0};
  return g;
}

GeometryData growing_cylinder(int n) {
  GeometryData g;
  g.b = 2;
  g.a = kTwoPi;
  g.L = kTwoPi * n;
  g.area = {8.0 * kPi * kPi * n, 8.0 * kPi * kPi * n};
  g.length_sep = {kTwoPi, kTwoPi};
  g.inj_bd = {g.L, g.L};
  g.diam_bd = {2.0 * g.L, 2.0 * g.L + kPi};
  g.boundary_lengths = {kTwoPi, kTwoPi};
  return g;
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("verdict semantics") {
  const auto lo = compare_bound("x", BoundKind::Lower, 1.01, 1, 1.0, 0.02);
  CHECK(lo.verdict == Verdict::Pass);
  CHECK(lo.satisfied());
  CHECK(lo.margin == doctest::Approx(-0.01));
  CHECK(compare_bound("x", BoundKind::Lower, 1.03, 1, 1.0, 0.02).verdict == Verdict::Fail);
  CHECK(compare_bound("x", BoundKind::Upper, 0.99, 1, 1.0, 0.02).verdict == Verdict::Pass);
  CHECK(compare_bound("x", BoundKind::Upper, 0.97, 1, 1.0, 0.02).verdict == Verdict::Fail);
  const auto na = not_applicable("y", BoundKind::Lower, 5.0, 1, 1.0, "L > 1");
  CHECK(na.verdict == Verdict::NotApplicable);
  CHECK(na.satisfied());
  BoundReport report;
  report.add("a", BoundKind::Lower, 0.5, 1, 1.0);
  CHECK(report.all_satisfied());
  report.add("b", BoundKind::Upper, 0.5, 1, 1.0);
  CHECK(!report.all_satisfied());
  CHECK(to_string(Verdict::NotApplicable) == "not-applicable");
  CHECK(to_string(BoundKind::Upper) == "upper");
}

TEST_CASE("length bound") {
  for (int n : {1, 2, 4}) {
    const auto g = growing_cylinder(n);
    const double bound = bound_length(g);
    CHECK(rel(bound, 1.0 / (8.0 * kPi * n)) < 1e-14);
    CHECK(rel((1.0 / (kTwoPi * n)) / bound, 4.0) < 1e-14);
  }
  CHECK(rel(bound_length(growing_cylinder(1)), 0.0397887357729738339) < 1e-14);

  auto g = synthetic();
  CHECK(rel(bound_length(g), 0.25 / (2.0 * 1.0 * 1.0 * 3.2)) < 1e-15);
  CHECK(rel(bound_length(g, Bracket{1.0, 2.0}), 0.25 / 4.0) < 1e-15);
  g.length_sep = {0.0, 0.0};
  CHECK(bound_length(g) == 0.0);
  g.b = 1;
  CHECK_THROWS_AS(bound_length(g), InvalidArgument);
}

TEST_CASE("thin neck length bound") {
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto surface = build_surface({ThinNeckComposite{1.0, 0.3, eps, 1.0 / eps}});
    const auto g = geometric_data(surface, triangulate(surface, 0.05));
    CHECK(rel(bound_length(g), eps * eps / (2.0 * g.area.hi)) < 1e-12);
    CHECK(bound_length(g) < 2.0 * eps * eps);
  }
}

TEST_CASE("curvature constant") {
  CHECK(std::abs(curvature_constant(-1.0, 2) - kCm1b2) < 1e-12);
  CHECK(rel(curvature_constant(-1.0, 2), 1.0 / (64.0 * std::cosh(1.0))) < 1e-15);
  CHECK(rel(curvature_constant(-4.0, 3), 1.0 / (144.0 * std::cosh(2.0))) < 1e-15);
  CHECK_THROWS_AS(curvature_constant(0.0, 2), InvalidArgument);
}

TEST_CASE("curvature bound on synthetic data") {
  auto g = synthetic();
  g.inj_bd = {0.5, 0.5};
  g.diam_bd = {2.0, 2.0};
  const auto cb = bound_curvature(g);
  const double sharp = 0.25 / (8.0 * 1.0 * (2.0 * 0.5 + 2.0 * 2.0 * std::sinh(0.5)));
  const double simplified = 0.5 / (64.0 * std::cosh(1.0) * 2.0);
  CHECK(rel(cb.sharp, sharp) < 1e-15);
  CHECK(rel(cb.sharp, 0.0101316918211523852) < 1e-15);
  CHECK(rel(cb.simplified, simplified) < 1e-15);
  CHECK(rel(cb.simplified, 0.00253146200649955234) < 1e-15);
  CHECK(cb.sharp >= cb.simplified);
  CHECK(cb.sharp_applicable);
  CHECK(cb.simplified_applicable);

  g.inj_bd = {1e-12, 0.5};
  const auto tiny = bound_curvature(g);
  CHECK(tiny.sharp < 1e-13);
  CHECK(tiny.simplified < 1e-12);
}

TEST_CASE("curvature bound hypotheses") {
  auto g = synthetic();
  g.L = 1.5;
  g.inj_bd = {0.5, 1.0};
  auto cb = bound_curvature(g);
  CHECK(!cb.sharp_applicable);
  CHECK(!cb.simplified_applicable);
  CHECK(!cb.note.empty());
  g = synthetic();
  g.a = 2.5;
  g.length_sep = {0.5, 0.6};
  cb = bound_curvature(g);
  CHECK(cb.sharp_applicable);
  CHECK(!cb.simplified_applicable);
  g = synthetic();
  g.kappa = 0.0;
  CHECK_THROWS_AS(bound_curvature(g), InvalidArgument);
}

TEST_CASE("length and sharp curvature bounds are homogeneous") {
  const auto g = synthetic();
  for (double c : {0.5, 3.0, 17.0}) {
    CAPTURE(c);
    const auto s = g.scaled(c);
    CHECK(rel(bound_length(s) * c, bound_length(g)) < 1e-12);
    CHECK(rel(bound_curvature(s).sharp * c, bound_curvature(g).sharp) < 1e-12);
  }
}

TEST_CASE("sandwich intervals") {
  auto s = sandwich_bounds(kTwoPi, 1.0, 2, 1);
  CHECK(s.lower == 0.0);
  CHECK(s.upper == 1.0);
  CHECK(s.j == 0);
  s = sandwich_bounds(kTwoPi, 1.0, 2, 2);
  CHECK(rel(s.lower, kTanh1) < 1e-15);
  CHECK(rel(s.upper, kCoth1) < 1e-15);
  CHECK(s.j == 1);
  CHECK(sandwich_bounds(kTwoPi, 1.0, 2, 5).j == 1);
  s = sandwich_bounds(kTwoPi, 1.0, 2, 6);
  CHECK(s.j == 2);
  CHECK(rel(s.lower, k2Tanh2) < 1e-15);
  CHECK(rel(s.upper, k2Coth2) < 1e-15);
  CHECK(sandwich_bounds(kTwoPi, 1.0, 3, 8).j == 1);
  CHECK(sandwich_bounds(kTwoPi, 1.0, 3, 9).j == 2);
  const auto c = sandwich_bounds_collar(k2Asinh1, 2, 1);
  CHECK(c.lower == 0.0);
  CHECK(rel(c.upper, k4OverPi) < 1e-15);
  const auto c2 = sandwich_bounds_collar(k2Asinh1, 2, 2);
  CHECK(rel(c2.lower, kCollarSigma1N) < 1e-14);
  CHECK_THROWS_AS(sandwich_bounds(kTwoPi, 1.0, 2, -1), InvalidArgument);
}

TEST_CASE("hyperbolic constants") {
  struct Row {
    int g, b;
    double L;
  };
  for (const Row r : {Row{0, 4, 76.5201289990005508}, Row{1, 2, 51.0134193326670339}, Row{2, 3, 102.026838665334068}}) {
    CAPTURE(r.g);
    CAPTURE(r.b);
    const auto c = hyperbolic_constants(r.g, r.b);
    const int n = r.g + r.b;
    const double formula = 4.0 * (3 * n - 3) * std::log(8.0 * kPi * (n - 1) / (3 * n - 3));
    CHECK(rel(c.L_gb, formula) < 1e-12);
    CHECK(rel(c.L_gb, r.L) < 1e-12);
    CHECK(rel(bers_constant(r.g, r.b), c.L_gb) < 1e-15);
    for (int i = 1; i <= 13; ++i) {
      CAPTURE(i);
      CHECK(c.beta[i] > 0.0);
    }
    CHECK(rel(c.beta[2], kBeta2) < 1e-14);
    CHECK(rel(c.beta[1], (3 * r.g - 3 + r.b) * c.L_gb) < 1e-15);
    CHECK(rel(c.beta[4], kAsinh1 / (kTwoPi * (2 * r.g - 2 + r.b))) < 1e-15);
    CHECK(rel(c.beta[5], collar_width(c.L_gb)) < 1e-15);
    CHECK(c.C1 == c.beta[13]);
    CHECK(rel(c.C2, kC2) < 1e-14);
    CHECK(c.C2 == std::max(8.0 * kAsinh1 / kPi, c.beta[2]));
    CHECK(c.C1 < c.C2);
    CHECK(rel(c.area, kTwoPi * (2 * r.g - 2 + r.b)) < 1e-15);
  }
  CHECK(rel(hyperbolic_constants(0, 4).L_gb, 36.0 * std::log(8.0 * kPi / 3.0)) < 1e-14);
  CHECK_THROWS_AS(hyperbolic_constants(0, 3), InvalidArgument);
  CHECK_THROWS_AS(hyperbolic_constants(1, 1), InvalidArgument);
  CHECK_THROWS_AS(hyperbolic_constants(-1, 4), InvalidArgument);
  CHECK_NOTHROW(check_signature(0, 5));
}

TEST_CASE("hyperbolic bound") {
  const auto c = hyperbolic_constants(1, 2);
  const auto hb = bound_hyperbolic(1, 2, 1.0, 1, 0.5);
  CHECK(hb.applicable);
  CHECK(rel(hb.lower, c.C1 * 0.25) < 1e-15);
  CHECK(rel(hb.upper, std::min(c.C2 * 0.5, 1.0 / std::atan(1.0 / std::sinh(0.5)))) < 1e-15);
  CHECK(hb.lower < hb.upper);

  const auto zero = bound_hyperbolic(1, 2, 1.0, 1, 1e-9);
  CHECK(zero.lower < 1e-15);
  CHECK(zero.upper < 1e-8);

  // At a = 1e-3 the collar cap beats C2 * length / a.
  const auto cap = bound_hyperbolic(1, 2, 1e-3, 1, 0.5);
  CHECK(c.C2 * 0.5 / 1e-3 > 1.0 / std::atan(1.0 / std::sinh(5e-4)));
  CHECK(rel(cap.upper, 1.0 / std::atan(1.0 / std::sinh(5e-4))) < 1e-15);

  CHECK(!bound_hyperbolic(1, 2, 2.0, 1, 0.5).applicable);
  CHECK(!bound_hyperbolic(1, 2, 1.0, 2, 0.5).applicable);
  CHECK(!bound_hyperbolic(1, 2, 1.0, 0, 0.5).applicable);
}

TEST_CASE("serialization") {
  BoundReport report;
  report.add("length", BoundKind::Lower, 0.04, 1, 0.159);
  const auto j = to_json(report);
  CHECK(j.at("tol") == 0.02);
  CHECK(j.at("entries").size() == 1);
  CHECK(j.at("entries")[0].at("verdict") == "pass");
  CHECK(j.at("entries")[0].at("kind") == "lower");
  std::ostringstream csv;
  write_bound_csv(csv, report);
  CHECK(csv.str().rfind("name,kind,index,value,sigma,verdict,margin\n", 0) == 0);

  const auto c = hyperbolic_constants(0, 4);
  const auto cj = to_json(c);
  CHECK(cj.at("L_gb").get<double>() == c.L_gb);
  CHECK(cj.at("beta13").get<double>() == c.beta[13]);
  CHECK(cj.at("C2").get<double>() == c.C2);
  std::ostringstream ccsv;
  write_constants_csv(ccsv, c);
  CHECK(ccsv.str().rfind("name,value\n", 0) == 0);
}

} // TEST_SUITE bounds

TEST_SUITE("bounds-homogeneity") {

// The simplified form carries cosh(sqrt(-kappa)), which does not scale.
TEST_CASE("simplified curvature bound is homogeneous of degree -1") {
  const auto g = synthetic();
  for (double c : {0.5, 3.0}) {
    CAPTURE(c);
    const auto s = g.scaled(c);
    CHECK(rel(bound_curvature(s).simplified * c, bound_curvature(g).simplified) < 1e-12);
  }
}

} // TEST_SUITE bounds-homogeneity
