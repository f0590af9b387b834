#pragma once

#include <cmath>
#include <vector>

namespace sgnav {

// Geometric tolerance for intersection and containment predicates (meters).
inline constexpr double kGeomEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  Vec2 normalized() const {
    const double n = norm();
    return n > 0.0 ? Vec2{x / n, y / n} : Vec2{};
  }
  // Counter-clockwise rotation.
  Vec2 rotated(double angle) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline double angle_of(const Vec2& v) { return std::atan2(v.y, v.x); }

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;

  Vec2 position() const { return {x, y}; }
};

struct Aabb {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool contains(const Vec2& p, double eps = 0.0) const {
    return p.x >= xmin - eps && p.x <= xmax + eps &&
           p.y >= ymin - eps && p.y <= ymax + eps;
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

// A simple polygon as an open vertex ring (last vertex connects to first).
using Polygon = std::vector<Vec2>;

double signed_area(const Polygon& poly);
bool is_ccw(const Polygon& poly);
// No two non-adjacent edges intersect; adjacent edges meet only at the shared
// vertex.
bool is_simple(const Polygon& poly);

enum class PointSide { Outside, Boundary, Inside };

// Classifies p relative to poly. Points within eps of an edge count as
// Boundary.
PointSide classify_point(const Polygon& poly, const Vec2& p, double eps = kGeomEps);

inline bool strictly_inside(const Polygon& poly, const Vec2& p, double eps = kGeomEps) {
  return classify_point(poly, p, eps) == PointSide::Inside;
}

// Min distance from p to the polygon boundary.
double distance_to_boundary(const Polygon& poly, const Vec2& p);

// Penetration depth: distance to the boundary if p is inside, else 0.
double obstacle_depth(const Polygon& poly, const Vec2& p);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Appends every parameter t in [0,1] at which segment p+t*(q-p) meets the
// polygon boundary (proper crossings, vertex touches, and the clipped
// endpoints of collinear overlaps).
void collect_boundary_params(const Polygon& poly, const Vec2& p, const Vec2& q,
                             std::vector<double>& out);

// True iff the open segment pq passes through the interior of poly. Grazing
// the boundary (running along an edge or touching a vertex) does not block.
// The segment is split at every boundary meeting point and each piece's
// midpoint is tested for strict containment.
bool segment_blocked_by(const Polygon& poly, const Vec2& p, const Vec2& q,
                        double eps = kGeomEps);

}  // namespace sgnav
