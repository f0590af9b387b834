#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sgnav/geometry.hpp"

namespace sgnav {

class EnvironmentError : public std::runtime_error {
 public:
  explicit EnvironmentError(const std::string& what) : std::runtime_error(what) {}
};

// Polygonal world. Obstacle rings are stored counter-clockwise; loading
// normalizes the orientation.
struct Environment {
  Aabb bounds;
  Pose start;
  Vec2 goal_position;
  std::vector<Polygon> obstacles;
};

// Throws EnvironmentError when an invariant is violated: polygons must be
// simple with >= 3 vertices and lie within bounds, start and goal must be in
// free space.
void validate(const Environment& env);

struct CornerMeta {
  int polygon = -1;  // -1 for the goal node
  int vertex = -1;
  double wall_dir_a = 0.0;  // direction toward the previous vertex
  double wall_dir_b = 0.0;  // direction toward the next vertex

  // Bisector of the wall angle pointing away from the obstacle.
  double free_bisector() const;
};

// Node 0 is the goal; the rest are convex obstacle corners in
// (polygon, vertex) order.
struct NodeSet {
  std::vector<Vec2> positions;
  std::vector<CornerMeta> meta;  // aligned with positions; meta[0] is a dummy

  int count() const { return static_cast<int>(positions.size()); }
};

using BoolMatrix = std::vector<std::vector<bool>>;

NodeSet extract_nodes(const Environment& env);

// True iff the open segment pq crosses no obstacle interior. Grazing edges
// and touching corner vertices do not block.
bool line_of_sight(const Environment& env, const Vec2& p, const Vec2& q);

// Symmetric, false diagonal.
BoolMatrix visibility_graph(const Environment& env, const NodeSet& nodes);

// Nodes whose bearing from the pose lies within +-fov/2 of the heading and
// that have line of sight. Nodes closer than kGeomEps to the pose have no
// bearing and are skipped.
std::vector<int> visible_nodes(const Environment& env, const Pose& pose,
                               const NodeSet& nodes, double fov);

}  // namespace sgnav
