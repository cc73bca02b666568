#include "support.hpp"

#include "steklov/error.hpp"
#include "steklov/oracles.hpp"
#include "steklov/spectra.hpp"

#include <doctest.h>

#include <map>

using namespace steklov;
using namespace steklov::test;

TEST_SUITE("spectra") {

TEST_CASE("rho") {
  const double r = rho();
  CHECK(std::abs(r - kRho) < 1e-12);
  CHECK(std::abs(r - 1.19968) < 1e-4);
  CHECK(std::abs(r * std::tanh(r) - 1.0) < 1e-12);
  CHECK(r > 1.0);
  CHECK(r < 1.5);
}

TEST_CASE("cylinder spectrum closed form") {
  const auto s = cylinder_steklov(1.0, 1.0, 8);
  REQUIRE(s.size() == 9);
  CHECK(s[0] == 0.0);
  CHECK(rel(s[1], kTanh1) < 1e-15);
  CHECK(rel(s[2], kTanh1) < 1e-15);
  CHECK(s[3] == 1.0);
  CHECK(rel(s[4], kCoth1) < 1e-15);
  CHECK(rel(s[6], k2Tanh2) < 1e-15);
  CHECK(rel(s[8], k2Coth2) < 1e-15);
  CHECK(s.entries[1].mode == ModeType::Tanh);
  CHECK(s.entries[3].mode == ModeType::Linear);
  CHECK(s.entries[4].mode == ModeType::Coth);
  CHECK_THROWS_AS(cylinder_steklov(0.0, 1.0, 3), InvalidArgument);
  CHECK_THROWS_AS(cylinder_steklov(1.0, 1.0, -1), InvalidArgument);
}

TEST_CASE("growing cylinder") {
  for (int n : {1, 2, 4}) {
    const double T = kTwoPi * n;
    const auto s = cylinder_steklov(1.0, T, 2);
    CHECK(s[1] == 1.0 / T);
    CHECK(s.entries[1].mode == ModeType::Linear);
  }
}

TEST_CASE("threshold behaviour around rho") {
  for (double f : {0.3, 0.9, 0.999, 1.001, 1.5, 4.0}) {
    CAPTURE(f);
    const double R = 1.7, T = f * kRho * R;
    const auto s = cylinder_steklov(R, T, 1);
    const double expect = f >= 1.0 ? 1.0 / T : std::tanh(T / R) / R;
    CHECK(rel(s[1], expect) < 1e-14);
  }
}

TEST_CASE("every Fourier mode appears twice") {
  for (const auto& s : {cylinder_steklov(0.7, 2.0, 30), cylinder_mixed(3.0, 0.4, MixedKind::Neumann, 30),
                        cylinder_mixed(3.0, 0.4, MixedKind::Dirichlet, 30), collar_mixed(0.8, MixedKind::Neumann, 30)}) {
    std::map<std::pair<int, int>, int> count;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) CHECK(s[i] >= s[i - 1]);
      if (s.entries[i].j > 0) ++count[{s.entries[i].j, static_cast<int>(s.entries[i].mode)}];
    }
    // Modes cut at the end of the list may be single.
    const int last_j = s.entries.back().j;
    for (const auto& [key, n] : count)
      if (key.first < last_j - 1) CHECK(n == 2);
  }
}

TEST_CASE("mixed flat spectra") {
  const auto n = cylinder_mixed(kTwoPi, 1.0, MixedKind::Neumann, 4);
  CHECK(n[0] == 0.0);
  CHECK(rel(n[1], kTanh1) < 1e-15);
  CHECK(rel(n[2], kTanh1) < 1e-15);
  CHECK(rel(n[3], k2Tanh2) < 1e-15);
  const auto d = cylinder_mixed(kTwoPi, 1.0, MixedKind::Dirichlet, 4);
  CHECK(d[0] == 1.0);
  CHECK(rel(d[1], kCoth1) < 1e-15);
  CHECK(rel(d[3], k2Coth2) < 1e-15);
  for (double a : {0.5, 2.0, 7.0})
    for (double L : {0.05, 0.4, 3.0}) {
      const auto nn = cylinder_mixed(a, L, MixedKind::Neumann, 12);
      const auto dd = cylinder_mixed(a, L, MixedKind::Dirichlet, 12);
      for (std::size_t k = 0; k < nn.size(); ++k) CHECK(nn[k] <= dd[k]);
      for (int j = 1; j <= 12; ++j) {
        const double x = kTwoPi * j / a;
        CHECK(x * std::tanh(x * L) <= x / std::tanh(x * L));
        if (std::tanh(x * L) < 1.0) CHECK(x * std::tanh(x * L) < x / std::tanh(x * L));
      }
    }
}

TEST_CASE("mixed spectra match the separation oracle") {
  for (double L : {0.3, 1.0}) {
    for (auto kind : {MixedKind::Neumann, MixedKind::Dirichlet}) {
      const double a = 2.0;
      const auto cf = cylinder_mixed(a, L, kind, 6);
      const double R = a / kTwoPi;
      const auto ode = separation_spectrum([R](double) { return R; }, L, kind, 6);
      for (std::size_t k = 0; k < cf.size(); ++k) {
        if (cf[k] == 0.0) {
          CHECK(std::abs(ode[k]) < 1e-12);
        } else {
          CHECK(rel(ode[k], cf[k]) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("interleaving of mixed and full cylinder spectra") {
  for (double T : {0.3, 1.0, 2.5, kTwoPi}) {
    const double R = 1.0;
    const auto full = cylinder_steklov(R, T, 20);
    // Two strips of depth L <= T around the circles; b = 2 so ranks double.
    for (double L : {T, 0.5 * T}) {
      const auto n = cylinder_mixed(kTwoPi * R, L, MixedKind::Neumann, 20);
      const auto d = cylinder_mixed(kTwoPi * R, L, MixedKind::Dirichlet, 20);
      std::vector<double> nn, dd;
      for (std::size_t i = 0; i < n.size(); ++i) nn.insert(nn.end(), 2, n[i]);
      for (std::size_t i = 0; i < d.size(); ++i) dd.insert(dd.end(), 2, d[i]);
      for (int k = 0; k <= 20; ++k) {
        CHECK(nn[k] <= full[k] * (1.0 + 1e-14));
        CHECK(full[k] <= dd[k] * (1.0 + 1e-14));
      }
    }
  }
}

TEST_CASE("collar width") {
  CHECK(rel(collar_width(k2Asinh1), kAsinh1) < 1e-15);
  double prev = collar_width(1e-4);
  for (double l : {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 60.0}) {
    const double w = collar_width(l);
    CHECK(w < prev);
    CHECK(w > 0.0);
    prev = w;
  }
  CHECK(rel(collar_width(1e-3), 8.29404966093536070) < 1e-13);
  // Logarithmic growth as l -> 0.
  CHECK(collar_width(1e-12) > 29.0);
  CHECK(std::isfinite(collar_width(1e-300)));
  CHECK(collar_width(1e-300) > 690.0);
  CHECK(collar_width(800.0) > 0.0);
  CHECK(collar_width(800.0) < 1e-170);
  CHECK_THROWS_AS(collar_width(0.0), InvalidArgument);
}

TEST_CASE("collar mixed spectrum") {
  const auto n = collar_mixed(k2Asinh1, MixedKind::Neumann, 2);
  CHECK(rel(n[1], kCollarSigma1N) < 1e-14);
  CHECK(rel(collar_depth(k2Asinh1), kPi / 4.0) < 1e-15);
  CHECK(rel(1.0 / collar_depth(k2Asinh1), k4OverPi) < 1e-15);
  const auto d = collar_mixed(k2Asinh1, MixedKind::Dirichlet, 2);
  CHECK(rel(d[0], k4OverPi) < 1e-15);
  for (double a : {0.1, 1.0, 3.0})
    for (auto kind : {MixedKind::Neumann, MixedKind::Dirichlet}) {
      const auto c = collar_mixed(a, kind, 9);
      const auto f = cylinder_mixed(a, std::atan(1.0 / std::sinh(a / 2.0)), kind, 9);
      for (std::size_t k = 0; k < c.size(); ++k) CHECK(rel(c[k], f[k]) <= 1e-15);
    }
}

TEST_CASE("collar test energy") {
  CHECK(rel(collar_test_energy(1.0), 1.0 / std::atan(1.0 / std::sinh(0.5))) < 1e-15);
  CHECK(rel(collar_test_energy(1.0), kBeta2) < 1e-14);
  CHECK(rel(collar_test_energy(k2Asinh1), kC2) < 1e-14);
  CHECK(std::abs(collar_test_energy(1.0) - 0.9171) < 1e-4);
  CHECK(std::abs(collar_test_energy(k2Asinh1) - 2.2446) < 5e-4);
  CHECK_THROWS_AS(collar_test_energy(-1.0), InvalidArgument);
}

TEST_CASE("collar test energy by quadrature") {
  CHECK(rel(collar_energy_quadrature(1.0, 0.02), collar_test_energy(1.0)) < 1e-6);
  CHECK(rel(collar_energy_quadrature(k2Asinh1, 0.02), collar_test_energy(k2Asinh1)) < 1e-6);
}

TEST_CASE("separation oracle on the warped collar") {
  const double a = 1.0;
  const double w = collar_width(a);
  const auto ode = separation_spectrum([a](double t) { return a * std::cosh(t) / kTwoPi; }, w,
                                       MixedKind::Neumann, 4);
  const auto cf = collar_mixed(a, MixedKind::Neumann, 4);
  for (std::size_t k = 1; k < cf.size(); ++k) CHECK(rel(ode[k], cf[k]) < 1e-10);
}

} // TEST_SUITE spectra
