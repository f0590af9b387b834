#include "sgnav/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace sgnav {

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

double signed_area(const Polygon& poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

bool is_ccw(const Polygon& poly) { return signed_area(poly) > 0.0; }

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace {

// Segment-segment meeting points, reported as params along pq.
// Collinear overlap contributes the two endpoints of the clipped overlap.
void segment_meeting_params(const Vec2& p, const Vec2& q, const Vec2& a,
                            const Vec2& b, double eps, std::vector<double>& out) {
  const Vec2 r = q - p;
  const Vec2 s = b - a;
  const double denom = cross(r, s);
  const double qp_cross_r = cross(a - p, r);

  const double r_len = r.norm();
  const double s_len = s.norm();
  if (r_len < eps) return;

  if (std::abs(denom) > eps * r_len * s_len) {
    const double t = cross(a - p, s) / denom;
    const double u = qp_cross_r / denom;
    const double t_eps = eps / r_len;
    const double u_eps = s_len > 0.0 ? eps / s_len : 0.0;
    if (t >= -t_eps && t <= 1.0 + t_eps && u >= -u_eps && u <= 1.0 + u_eps) {
      out.push_back(std::clamp(t, 0.0, 1.0));
    }
    return;
  }

  // Parallel. Only collinear segments can meet.
  if (std::abs(qp_cross_r) > eps * r_len) return;
  const double rr = r.squared_norm();
  double t0 = dot(a - p, r) / rr;
  double t1 = dot(b - p, r) / rr;
  if (t0 > t1) std::swap(t0, t1);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  if (t0 <= t1) {
    out.push_back(t0);
    out.push_back(t1);
  }
}

}  // namespace

bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a0 = poly[i];
    const Vec2& a1 = poly[(i + 1) % n];
    if (distance(a0, a1) < kGeomEps) return false;  // degenerate edge
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Vec2& b0 = poly[j];
      const Vec2& b1 = poly[(j + 1) % n];
      std::vector<double> ts;
      segment_meeting_params(a0, a1, b0, b1, kGeomEps, ts);
      if (ts.empty()) continue;
      if (!adjacent) return false;
      // Adjacent edges may only meet at their shared vertex.
      for (double t : ts) {
        const Vec2 hit = a0 + (a1 - a0) * t;
        const bool at_shared =
            distance(hit, a1) < 1e-7 || (i == 0 && j == n - 1 && distance(hit, a0) < 1e-7);
        if (!at_shared) return false;
      }
    }
  }
  return true;
}

PointSide classify_point(const Polygon& poly, const Vec2& p, double eps) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= eps) {
      return PointSide::Boundary;
    }
  }
  // Crossing number with the half-open rule: an edge counts when exactly one
  // endpoint is strictly above the horizontal line through p.
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_hit = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x_hit > p.x) inside = !inside;
    }
  }
  return inside ? PointSide::Inside : PointSide::Outside;
}

double distance_to_boundary(const Polygon& poly, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

double obstacle_depth(const Polygon& poly, const Vec2& p) {
  if (classify_point(poly, p, 0.0) != PointSide::Inside) return 0.0;
  return distance_to_boundary(poly, p);
}

void collect_boundary_params(const Polygon& poly, const Vec2& p, const Vec2& q,
                             std::vector<double>& out) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    segment_meeting_params(p, q, poly[i], poly[(i + 1) % n], kGeomEps, out);
  }
}

bool segment_blocked_by(const Polygon& poly, const Vec2& p, const Vec2& q, double eps) {
  if (distance(p, q) < eps) {
    return classify_point(poly, p, eps) == PointSide::Inside;
  }
  std::vector<double> ts;
  ts.reserve(8);
  ts.push_back(0.0);
  ts.push_back(1.0);
  collect_boundary_params(poly, p, q, ts);
  std::sort(ts.begin(), ts.end());
  const Vec2 r = q - p;
  const double min_gap = eps / r.norm();
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= min_gap) continue;
    const Vec2 mid = p + r * (0.5 * (ts[i] + ts[i + 1]));
    if (classify_point(poly, mid, eps) == PointSide::Inside) return true;
  }
  return false;
}

}  // namespace sgnav
