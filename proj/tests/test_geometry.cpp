#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgnav/geometry.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace sgnav;

namespace {
const Polygon kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(3.141592653589793) == doctest::Approx(3.141592653589793));
  CHECK(wrap_angle(-3.141592653589793) == doctest::Approx(3.141592653589793));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * 3.141592653589793));
  CHECK(wrap_angle(-7.0) == doctest::Approx(-7.0 + 2 * 3.141592653589793));
}

TEST_CASE("signed area and orientation") {
  CHECK(signed_area(kUnitSquare) == doctest::Approx(1.0));
  CHECK(is_ccw(kUnitSquare));
  Polygon cw = kUnitSquare;
  std::reverse(cw.begin(), cw.end());
  CHECK_FALSE(is_ccw(cw));
}

TEST_CASE("simple polygon detection") {
  CHECK(is_simple(kUnitSquare));
  const Polygon bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_FALSE(is_simple(bowtie));
  const Polygon degenerate{{0, 0}, {1, 0}};
  CHECK_FALSE(is_simple(degenerate));
}

TEST_CASE("point classification") {
  CHECK(classify_point(kUnitSquare, {0.5, 0.5}) == PointSide::Inside);
  CHECK(classify_point(kUnitSquare, {2.0, 0.5}) == PointSide::Outside);
  CHECK(classify_point(kUnitSquare, {0.5, 0.0}) == PointSide::Boundary);
  CHECK(classify_point(kUnitSquare, {0.0, 0.0}) == PointSide::Boundary);
}

TEST_CASE("point classification agrees with winding oracle off-boundary") {
  testutil::TestRng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec2 p{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
    if (distance_to_boundary(kUnitSquare, p) < 1e-6) continue;
    const bool inside = classify_point(kUnitSquare, p) == PointSide::Inside;
    CHECK(inside == oracles::point_inside_winding(kUnitSquare, p));
  }
}

TEST_CASE("segment blocking through a square") {
  // Proper crossing.
  CHECK(segment_blocked_by(kUnitSquare, {-1, 0.5}, {2, 0.5}));
  // Fully outside.
  CHECK_FALSE(segment_blocked_by(kUnitSquare, {-1, -1}, {2, -1}));
  // Along one edge: grazing only.
  CHECK_FALSE(segment_blocked_by(kUnitSquare, {0, 0}, {1, 0}));
  // Diagonal between opposite corners passes through the interior.
  CHECK(segment_blocked_by(kUnitSquare, {0, 0}, {1, 1}));
  // Touching a single corner in passing does not block.
  CHECK_FALSE(segment_blocked_by(kUnitSquare, {-1, 1}, {1, 3}));
  CHECK_FALSE(segment_blocked_by(kUnitSquare, {-1, 0}, {0, 0}));
  // Segment wholly inside.
  CHECK(segment_blocked_by(kUnitSquare, {0.25, 0.5}, {0.75, 0.5}));
}

TEST_CASE("obstacle depth") {
  CHECK(obstacle_depth(kUnitSquare, {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(obstacle_depth(kUnitSquare, {0.5, 0.04}) == doctest::Approx(0.04));
  CHECK(obstacle_depth(kUnitSquare, {5.0, 5.0}) == doctest::Approx(0.0));
}

TEST_CASE("point_segment_distance") {
  CHECK(point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({5, 0}, {-1, 0}, {1, 0}) == doctest::Approx(4.0));
  CHECK(point_segment_distance({0, 0}, {0, 0}, {0, 0}) == doctest::Approx(0.0));
}
