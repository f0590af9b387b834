#include "sgnav/env.hpp"

#include <algorithm>
#include <numbers>

namespace sgnav {

double CornerMeta::free_bisector() const {
  const Vec2 ua{std::cos(wall_dir_a), std::sin(wall_dir_a)};
  const Vec2 ub{std::cos(wall_dir_b), std::sin(wall_dir_b)};
  // For a convex corner the wall directions span the obstacle wedge, so their
  // sum points into the obstacle.
  const Vec2 sum = ua + ub;
  return angle_of(Vec2{-sum.x, -sum.y});
}

void validate(const Environment& env) {
  if (env.bounds.width() <= 0.0 || env.bounds.height() <= 0.0) {
    throw EnvironmentError("workspace bounds are empty");
  }
  for (std::size_t pi = 0; pi < env.obstacles.size(); ++pi) {
    const Polygon& poly = env.obstacles[pi];
    if (poly.size() < 3) {
      throw EnvironmentError("obstacle " + std::to_string(pi) + " has fewer than 3 vertices");
    }
    if (!is_simple(poly)) {
      throw EnvironmentError("obstacle " + std::to_string(pi) + " is not a simple polygon");
    }
    for (const Vec2& v : poly) {
      if (!env.bounds.contains(v, kGeomEps)) {
        throw EnvironmentError("obstacle " + std::to_string(pi) + " leaves workspace bounds");
      }
    }
  }
  for (std::size_t pi = 0; pi < env.obstacles.size(); ++pi) {
    if (strictly_inside(env.obstacles[pi], env.start.position())) {
      throw EnvironmentError("start pose lies inside obstacle " + std::to_string(pi));
    }
    if (strictly_inside(env.obstacles[pi], env.goal_position)) {
      throw EnvironmentError("goal lies inside obstacle " + std::to_string(pi));
    }
  }
  if (!env.bounds.contains(env.start.position(), kGeomEps)) {
    throw EnvironmentError("start pose outside workspace bounds");
  }
  if (!env.bounds.contains(env.goal_position, kGeomEps)) {
    throw EnvironmentError("goal outside workspace bounds");
  }
}

NodeSet extract_nodes(const Environment& env) {
  validate(env);
  NodeSet nodes;
  nodes.positions.push_back(env.goal_position);
  nodes.meta.push_back(CornerMeta{});

  for (std::size_t pi = 0; pi < env.obstacles.size(); ++pi) {
    const Polygon& poly = env.obstacles[pi];
    const std::size_t n = poly.size();
    const bool ccw = is_ccw(poly);
    for (std::size_t vi = 0; vi < n; ++vi) {
      const Vec2& prev = poly[(vi + n - 1) % n];
      const Vec2& v = poly[vi];
      const Vec2& next = poly[(vi + 1) % n];
      double turn = cross(v - prev, next - v);
      if (!ccw) turn = -turn;
      if (turn <= kGeomEps) continue;  // reflex or straight corner

      // Corners buried inside another obstacle are unreachable.
      bool buried = false;
      for (std::size_t pj = 0; pj < env.obstacles.size(); ++pj) {
        if (pj != pi && strictly_inside(env.obstacles[pj], v)) {
          buried = true;
          break;
        }
      }
      if (buried) continue;

      CornerMeta meta;
      meta.polygon = static_cast<int>(pi);
      meta.vertex = static_cast<int>(vi);
      meta.wall_dir_a = angle_of(prev - v);
      meta.wall_dir_b = angle_of(next - v);
      nodes.positions.push_back(v);
      nodes.meta.push_back(meta);
    }
  }
  return nodes;
}

bool line_of_sight(const Environment& env, const Vec2& p, const Vec2& q) {
  for (const Polygon& poly : env.obstacles) {
    if (segment_blocked_by(poly, p, q)) return false;
  }
  return true;
}

BoolMatrix visibility_graph(const Environment& env, const NodeSet& nodes) {
  const int n = nodes.count();
  BoolMatrix v(n, std::vector<bool>(n, false));
  for (int k = 0; k < n; ++k) {
    for (int i = k + 1; i < n; ++i) {
      const bool vis = line_of_sight(env, nodes.positions[k], nodes.positions[i]);
      v[k][i] = vis;
      v[i][k] = vis;
    }
  }
  return v;
}

std::vector<int> visible_nodes(const Environment& env, const Pose& pose,
                               const NodeSet& nodes, double fov) {
  std::vector<int> out;
  const Vec2 from = pose.position();
  const double half = 0.5 * fov;
  for (int i = 0; i < nodes.count(); ++i) {
    const Vec2 d = nodes.positions[i] - from;
    if (d.norm() < kGeomEps) continue;
    const double off = std::abs(wrap_angle(angle_of(d) - pose.psi));
    if (off > half) continue;
    if (line_of_sight(env, from, nodes.positions[i])) out.push_back(i);
  }
  return out;
}

}  // namespace sgnav
