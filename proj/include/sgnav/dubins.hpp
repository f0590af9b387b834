#pragma once

#include <array>
#include <string>
#include <vector>

#include "sgnav/geometry.hpp"

namespace sgnav {

enum class DubinsWord { LSL, LSR, RSL, RSR, RLR, LRL };

const char* to_string(DubinsWord w);

// A shortest bounded-curvature path: three segments (arc/straight/arc or
// arc/arc/arc) at turning radius `radius`.
struct DubinsPath {
  Pose start;
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> seg_lengths{};  // in radius units
  double radius = 1.0;

  double length() const {
    return (seg_lengths[0] + seg_lengths[1] + seg_lengths[2]) * radius;
  }
  // Pose after arc length s (meters) along the path, s in [0, length()].
  Pose pose_at(double s) const;
  // Polyline sampled at spacing <= ds, endpoints included.
  std::vector<Vec2> sample(double ds) const;
};

// Minimum over the six CSC/CCC word types. Each candidate is reconstructed by
// forward integration and discarded unless it lands on the target pose, so the
// returned path is always kinematically consistent.
DubinsPath dubins_shortest_path(const Pose& a, const Pose& b, double radius);

}  // namespace sgnav
