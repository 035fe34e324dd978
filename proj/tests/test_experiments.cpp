// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tdg/experiments.hpp"

using namespace tdg;
using namespace tdg::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;

// five-point central differences, fourth-order accurate
double d1(const std::function<double(double)>& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("manufactured source values") {
  const ManufacturedCase c;
  SUBCASE("body force at the origin") {
    CHECK(manufactured_sources(0.0, 0.0, c).first ==
          doctest::Approx(kPi * kPi / 4.0).epsilon(1e-12));
  }
  SUBCASE("heat source vanishes at the midpoint, mid time") {
    ManufacturedCase k0 = c;
    k0.k = 0.0;
    CHECK(manufactured_sources(0.5, 0.5, k0).second == doctest::Approx(0.0));
  }
  SUBCASE("degenerate coefficients collapse the body force") {
    ManufacturedCase c2;
    c2.eps1 = 1.0;
    c2.eps2 = 0.0;
    c2.k = 0.0;
    for (double xi : {0.1, 0.4, 0.9})
      for (double tau : {0.05, 0.2}) {
        const double expect = kPi * kPi / 4.0 * std::cos(kPi * xi) * std::cos(kPi * tau);
        CHECK(manufactured_sources(xi, tau, c2).first == doctest::Approx(expect).epsilon(1e-12));
      }
  }
}

TEST_CASE("manufactured exact fields") {
  SUBCASE("displacement sample") {
    CHECK(manufactured_exact(0.5, 0.25)[0] == doctest::Approx(0.176777).epsilon(1e-5));
  }
  SUBCASE("velocity vanishes at tau = 1/2") {
    for (double xi : {0.0, 0.3, 0.77}) CHECK(manufactured_exact(xi, 0.5)[1] ==
                                             doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("pairwise equal fields") {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
      const double xi = rng.uniform(), tau = rng.uniform();
      const std::array<double, 4> f = manufactured_exact(xi, tau);
      CHECK(f[0] == f[2]);
      CHECK(f[1] == f[3]);
    }
  }
}

TEST_CASE("manufactured fields satisfy the scaled equations with the sources") {
  ManufacturedCase c;
  c.k = 0.1;  // exercise the conduction source term too
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const double xi = rng.uniform(0.05, 0.95);
    const double tau = rng.uniform(0.05, 0.95);
    auto u = [&](double x, double t) { return manufactured_exact(x, t)[0]; };
    auto v = [&](double x, double t) { return manufactured_exact(x, t)[1]; };
    auto a = [&](double x, double t) { return manufactured_exact(x, t)[2]; };
    auto th = [&](double x, double t) { return manufactured_exact(x, t)[3]; };
    const auto [b, s] = manufactured_sources(xi, tau, c);

    const double r1 = d1([&](double t) { return u(xi, t); }, tau) - v(xi, tau);
    const double flux = d1([&](double x) { return c.eps1 * d1([&](double xx) { return u(xx, tau); }, x) -
                                                  th(x, tau); },
                           xi);
    const double r2 = d1([&](double t) { return v(xi, t); }, tau) - flux - b;
    const double r3 = d1([&](double t) { return a(xi, t); }, tau) - th(xi, tau);
    const double heat_flux_x = d1(
        [&](double x) {
          return d1([&](double xx) { return a(xx, tau); }, x) +
                 c.k * d1([&](double xx) { return th(xx, tau); }, x);
        },
        xi);
    const double r4 = d1([&](double t) { return th(xi, t); }, tau) - heat_flux_x +
                      c.eps2 * d1([&](double x) { return v(x, tau); }, xi) - s;
    CHECK(std::abs(r1) <= 1e-8);
    CHECK(std::abs(r2) <= 1e-8);
    CHECK(std::abs(r3) <= 1e-8);
    CHECK(std::abs(r4) <= 1e-8);
  }
}

TEST_CASE("pulsed source values and decay") {
  const LaserCase c;
  SUBCASE("peak value at the origin") {
    CHECK(laser_source(0.0, 0.0, c) == doctest::Approx(5000.0).epsilon(1e-12));
  }
  SUBCASE("temporal factor after one pulse duration") {
    CHECK(laser_source(0.0, c.tau_p, c) == doctest::Approx(5000.0 / std::exp(1.0)).epsilon(1e-12));
  }
  SUBCASE("long-time decay at fixed position") {
    CHECK(laser_source(0.1, 50 * c.tau_p, c) <= 1e-300);
  }
  SUBCASE("nonnegative everywhere with the localized sign") {
    Rng rng(2);
    for (int t = 0; t < 50; ++t)
      CHECK(laser_source(rng.uniform(0, 1), rng.uniform(0, 1), c) >= 0.0);
  }
  SUBCASE("the printed growing variant is selectable") {
    LaserCase grow = c;
    grow.spatial_sign = +1;
    CHECK(laser_source(0.5, 0.0, grow) > laser_source(0.5, 0.0, c));
  }
  SUBCASE("pulse resolution guard") {
    CHECK(c.resolves_pulse());
    LaserCase coarse = c;
    coarse.h = 0.05;
    CHECK(!coarse.resolves_pulse());
  }
}

TEST_CASE("initial plate pulse is a radial bounded bump") {
  const Pulse2DCase c;
  SUBCASE("center amplitude") { CHECK(initial_pulse_2d(0.0, 0.0, c) == doctest::Approx(4.0)); }
  SUBCASE("radial symmetry") {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
      const double r = rng.uniform(0, 0.5), phi = rng.uniform(0, 2 * kPi);
      const double v1 = initial_pulse_2d(r, 0.0, c);
      const double v2 = initial_pulse_2d(r * std::cos(phi), r * std::sin(phi), c);
      CHECK(v1 == doctest::Approx(v2).epsilon(1e-12));
    }
  }
  SUBCASE("normalized range") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      const double v = initial_pulse_2d(rng.uniform(-1, 1), rng.uniform(-1, 1), c) / c.amplitude;
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("plate parameters reproduce the tabulated speeds and ratio") {
  const Pulse2DCase c;
  const MaterialParams p = c.material();
  CHECK(std::sqrt(p.p_wave_modulus() / p.rho) == doctest::Approx(1.96).epsilon(1e-12));
  CHECK(p.second_sound_speed() == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(p.k2 / p.k3 == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(p.coupling_m() == doctest::Approx(c.coupling).epsilon(1e-12));
  CHECK(p.theta0 == 1.0);
  CHECK_NOTHROW(p.validate());
  SUBCASE("initial state respects the clamped boundary") {
    const Mesh mesh = c.make_mesh();
    const StateVector s = c.initial(mesh);
    for (int n = 0; n < mesh.n_nodes(); ++n)
      if (mesh.on_boundary[n]) CHECK(s.theta[n] == 0.0);
    // interior center node carries the amplitude
    double mx = 0.0;
    for (double v : s.theta) mx = std::max(mx, v);
    CHECK(mx == doctest::Approx(4.0));
  }
}
