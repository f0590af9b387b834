#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "sgnav/env.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace sgnav;

namespace {

Environment square_world() {
  Environment env;
  env.bounds = {-10, -10, 10, 10};
  env.start = {-8, 0, 0};
  env.goal_position = {8, 0};
  env.obstacles.push_back({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
  return env;
}

Environment empty_world() {
  Environment env;
  env.bounds = {-10, -10, 10, 10};
  env.start = {-8, 0, 0};
  env.goal_position = {8, 0};
  return env;
}

}  // namespace

TEST_CASE("extract_nodes: square world gives goal + 4 corners") {
  const NodeSet nodes = extract_nodes(square_world());
  REQUIRE(nodes.count() == 5);
  CHECK(nodes.positions[0] == Vec2{8, 0});
  for (int i = 1; i < 5; ++i) {
    CHECK(nodes.meta[i].polygon == 0);
    CHECK(nodes.meta[i].vertex == i - 1);
  }
}

TEST_CASE("extract_nodes: empty world is goal only") {
  const NodeSet nodes = extract_nodes(empty_world());
  REQUIRE(nodes.count() == 1);
  CHECK(nodes.positions[0] == Vec2{8, 0});
}

TEST_CASE("extract_nodes: triangle plus square in deterministic order") {
  Environment env = empty_world();
  env.obstacles.push_back({{-6, -6}, {-4, -6}, {-5, -4}});          // triangle
  env.obstacles.push_back({{2, 2}, {4, 2}, {4, 4}, {2, 4}});        // square
  const NodeSet nodes = extract_nodes(env);
  REQUIRE(nodes.count() == 8);
  CHECK(nodes.meta[1].polygon == 0);
  CHECK(nodes.meta[4].polygon == 1);
}

TEST_CASE("extract_nodes: reflex corners are dropped") {
  Environment env = empty_world();
  // L-shape: one reflex corner at (1,1).
  env.obstacles.push_back({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
  const NodeSet nodes = extract_nodes(env);
  CHECK(nodes.count() == 1 + 5);
  for (int i = 1; i < nodes.count(); ++i) {
    CHECK_FALSE((nodes.positions[i] == Vec2{1, 1}));
  }
}

TEST_CASE("extract_nodes rejects a goal inside an obstacle") {
  Environment env = square_world();
  env.goal_position = {0, 0};
  CHECK_THROWS_AS(extract_nodes(env), EnvironmentError);
}

TEST_CASE("validate rejects malformed worlds") {
  Environment env = square_world();
  env.obstacles.push_back({{0, 0}, {1, 1}});
  CHECK_THROWS_AS(validate(env), EnvironmentError);

  env = square_world();
  env.obstacles.push_back({{2, 2}, {4, 4}, {4, 2}, {2, 4}});  // self-intersecting
  CHECK_THROWS_AS(validate(env), EnvironmentError);

  env = square_world();
  env.obstacles[0][0] = {-50, -50};  // outside bounds
  CHECK_THROWS_AS(validate(env), EnvironmentError);
}

TEST_CASE("line_of_sight basics") {
  const Environment env = square_world();
  // Empty world: always true.
  CHECK(line_of_sight(empty_world(), {-5, 3}, {7, -2}));
  // Straight through the square.
  CHECK_FALSE(line_of_sight(env, {-2, 0}, {2, 0}));
  // Grazing along one edge between two vertices.
  CHECK(line_of_sight(env, {-0.5, -0.5}, {0.5, -0.5}));
  // Above the obstacle.
  CHECK(line_of_sight(env, {-2, 1}, {2, 1}));
}

TEST_CASE("line_of_sight agrees with dense sampling oracle on random worlds") {
  testutil::TestRng rng(11);
  int checked = 0;
  while (checked < 500) {
    const Environment env = testutil::random_world(rng);
    for (int s = 0; s < 10; ++s, ++checked) {
      const Vec2 p{rng.uniform(1.0, 59.0), rng.uniform(1.0, 59.0)};
      const Vec2 q{rng.uniform(1.0, 59.0), rng.uniform(1.0, 59.0)};
      const bool impl = line_of_sight(env, p, q);
      const bool oracle = oracles::line_of_sight_sampled(env, p, q);
      CHECK(impl == oracle);
    }
  }
}

TEST_CASE("visibility_graph is symmetric with a false diagonal") {
  testutil::TestRng rng(3);
  for (int w = 0; w < 20; ++w) {
    const Environment env = testutil::random_world(rng);
    const NodeSet nodes = extract_nodes(env);
    const BoolMatrix v = visibility_graph(env, nodes);
    for (int k = 0; k < nodes.count(); ++k) {
      CHECK_FALSE(v[k][k]);
      for (int i = 0; i < nodes.count(); ++i) {
        CHECK(v[k][i] == v[i][k]);
      }
    }
  }
}

TEST_CASE("visibility_graph: goal and corner mutually visible") {
  const Environment env = square_world();
  const NodeSet nodes = extract_nodes(env);
  const BoolMatrix v = visibility_graph(env, nodes);
  CHECK(v[0][1]);
  CHECK(v[1][0]);
}

TEST_CASE("visible_nodes respects the field of view") {
  Environment env = empty_world();
  NodeSet nodes;
  nodes.positions = {env.goal_position};
  nodes.meta = {CornerMeta{}};
  const double deg = std::numbers::pi / 180.0;
  // Node at bearing 20 degrees inside a 60 degree cone; 40 degrees outside.
  nodes.positions.push_back(Vec2{std::cos(20 * deg), std::sin(20 * deg)} * 5.0);
  nodes.meta.push_back(CornerMeta{});
  nodes.positions.push_back(Vec2{std::cos(40 * deg), std::sin(40 * deg)} * 5.0);
  nodes.meta.push_back(CornerMeta{});

  const Pose pose{0, 0, 0};
  const auto vis = visible_nodes(env, pose, nodes, 60 * deg);
  CHECK(std::find(vis.begin(), vis.end(), 1) != vis.end());
  CHECK(std::find(vis.begin(), vis.end(), 2) == vis.end());
}

TEST_CASE("visible_nodes: occlusion excludes a node dead ahead") {
  const Environment env = square_world();
  const NodeSet nodes = extract_nodes(env);
  // Goal (node 0) is at bearing 0 from the start but behind the square.
  const auto vis = visible_nodes(env, env.start, nodes, 2 * std::numbers::pi);
  CHECK(std::find(vis.begin(), vis.end(), 0) == vis.end());
}

TEST_CASE("visible_nodes with full fov equals the visibility row at a node") {
  testutil::TestRng rng(5);
  for (int w = 0; w < 10; ++w) {
    const Environment env = testutil::random_world(rng);
    const NodeSet nodes = extract_nodes(env);
    const BoolMatrix v = visibility_graph(env, nodes);
    for (int k = 0; k < nodes.count(); ++k) {
      const Pose pose{nodes.positions[k].x, nodes.positions[k].y, 0.7};
      const auto vis = visible_nodes(env, pose, nodes, 2 * std::numbers::pi);
      std::vector<int> expected;
      for (int i = 0; i < nodes.count(); ++i) {
        if (v[k][i] && distance(nodes.positions[k], nodes.positions[i]) > kGeomEps) {
          expected.push_back(i);
        }
      }
      CHECK(vis == expected);
    }
  }
}

TEST_CASE("corner meta wall directions and free bisector") {
  const Environment env = square_world();
  const NodeSet nodes = extract_nodes(env);
  // Corner (-0.5,-0.5): walls head +x (toward next CCW vertex) and +y (toward
  // previous); free space bisector points down-left.
  const CornerMeta& m = nodes.meta[1];
  const double bis = m.free_bisector();
  CHECK(std::cos(bis) < 0.0);
  CHECK(std::sin(bis) < 0.0);
  CHECK(std::abs(wrap_angle(bis - (-3.0 * std::numbers::pi / 4.0))) ==
        doctest::Approx(0.0).epsilon(1e-9));
}
