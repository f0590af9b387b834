#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgnav/dynamics.hpp"
#include "support/testutil.hpp"

using namespace sgnav;

TEST_CASE("defaults match the experiment constants") {
  const VehicleParams p;
  CHECK(p.v_max == 5.20);
  CHECK(p.omega_max == 0.65);
  CHECK(p.k_acc == 7.50);
  CHECK(p.k_drag == 0.88);
  CHECK(p.u_lon_max == 0.62);
  CHECK(p.u_lat_max == 0.75);
  CHECK(p.dt == 0.02);
}

TEST_CASE("step: full throttle from rest") {
  const VehicleParams p;
  VehicleState s;
  s = step(s, {0.62, 0.0}, p);
  CHECK(s.v == doctest::Approx(0.093).epsilon(1e-12));
  CHECK(s.x == doctest::Approx(0.0));
  CHECK(s.y == doctest::Approx(0.0));
}

TEST_CASE("step: zero input is a fixed point at rest") {
  const VehicleParams p;
  VehicleState s;
  s.psi = 0.3;
  const VehicleState next = step(s, {0.0, 0.0}, p);
  CHECK(next.x == s.x);
  CHECK(next.y == s.y);
  CHECK(next.psi == s.psi);
  CHECK(next.v == s.v);
}

TEST_CASE("step rejects out-of-bounds commands") {
  const VehicleParams p;
  VehicleState s;
  CHECK_THROWS_AS(step(s, {0.63, 0.0}, p), ControlBoundError);
  CHECK_THROWS_AS(step(s, {-0.01, 0.0}, p), ControlBoundError);
  CHECK_THROWS_AS(step(s, {0.0, 0.76}, p), ControlBoundError);
  CHECK_THROWS_AS(step(s, {0.0, -0.76}, p), ControlBoundError);
}

TEST_CASE("step response reaches 63.2% of steady state near the time constant") {
  const VehicleParams p;
  const double v_ss = p.k_acc * 0.62 / p.k_drag;
  VehicleState s;
  double t = 0.0;
  while (s.v < 0.632 * v_ss) {
    s = step(s, {0.62, 0.0}, p);
    t += p.dt;
  }
  CHECK(t == doctest::Approx(1.136).epsilon(0.03));
  CHECK(p.tau() == doctest::Approx(1.136).epsilon(0.001));
}

TEST_CASE("closed-form speed matches Euler within 0.5% over 5 s") {
  const VehicleParams p;
  VehicleState s;
  const double u = 0.5;
  double t = 0.0;
  for (int i = 0; i < 250; ++i) {
    s = step(s, {u, 0.0}, p);
    t += p.dt;
    const double exact = speed_closed_form(0.0, u, t, p);
    CHECK(std::abs(s.v - exact) <= 0.005 * exact + 1e-9);
  }
}

TEST_CASE("speed stays in range and finite under random command sequences") {
  const VehicleParams p;
  testutil::TestRng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    VehicleState s;
    s.psi = rng.uniform(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
      const ControlInput u{rng.uniform(0.0, p.u_lon_max),
                           rng.uniform(-p.u_lat_max, p.u_lat_max)};
      s = step(s, u, p);
      REQUIRE(std::isfinite(s.x));
      REQUIRE(std::isfinite(s.y));
      REQUIRE(std::isfinite(s.psi));
      REQUIRE(s.v >= 0.0);
      REQUIRE(s.v <= p.v_max);
      REQUIRE(s.psi <= 3.14159265358979324);
      REQUIRE(s.psi > -3.14159265358979324);
    }
  }
}

TEST_CASE("turn-rate envelope") {
  const VehicleParams p;
  CHECK(speed_turnrate_limit(5.2, p) == doctest::Approx(0.75 / 5.2).epsilon(1e-12));
  CHECK(speed_turnrate_limit(1.0, p) == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(speed_turnrate_limit(p.v_floor, p) == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(speed_turnrate_limit(0.0, p) == doctest::Approx(0.65).epsilon(1e-12));
  // Breakpoint at u_lat_max / omega_max.
  const double v_break = p.u_lat_max / p.omega_max;
  CHECK(speed_turnrate_limit(v_break - 1e-6, p) == doctest::Approx(0.65).epsilon(1e-9));
  CHECK(speed_turnrate_limit(v_break + 1e-6, p) < 0.65);
}

TEST_CASE("turn-rate envelope is non-increasing in speed") {
  const VehicleParams p;
  double prev = speed_turnrate_limit(0.0, p);
  for (double v = 0.01; v <= p.v_max; v += 0.01) {
    const double cur = speed_turnrate_limit(v, p);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}
