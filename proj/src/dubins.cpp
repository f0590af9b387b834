#include "sgnav/dubins.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sgnav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

enum class Seg { L, S, R };

constexpr std::array<std::array<Seg, 3>, 6> kWordSegments = {{
    {Seg::L, Seg::S, Seg::L},  // LSL
    {Seg::L, Seg::S, Seg::R},  // LSR
    {Seg::R, Seg::S, Seg::L},  // RSL
    {Seg::R, Seg::S, Seg::R},  // RSR
    {Seg::R, Seg::L, Seg::R},  // RLR
    {Seg::L, Seg::R, Seg::L},  // LRL
}};

Pose apply_segment(const Pose& p, Seg type, double len, double radius) {
  Pose out = p;
  switch (type) {
    case Seg::S:
      out.x += radius * len * std::cos(p.psi);
      out.y += radius * len * std::sin(p.psi);
      break;
    case Seg::L:
      out.x += radius * (std::sin(p.psi + len) - std::sin(p.psi));
      out.y -= radius * (std::cos(p.psi + len) - std::cos(p.psi));
      out.psi = p.psi + len;
      break;
    case Seg::R:
      out.x -= radius * (std::sin(p.psi - len) - std::sin(p.psi));
      out.y += radius * (std::cos(p.psi - len) - std::cos(p.psi));
      out.psi = p.psi - len;
      break;
  }
  return out;
}

struct Candidate {
  bool valid = false;
  std::array<double, 3> lens{};
};

// Shkel-Lumelsky closed forms in the canonical frame: start at the origin
// heading alpha, target at distance d on the x-axis heading beta.
Candidate solve_word(DubinsWord word, double d, double alpha, double beta) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  Candidate c;
  switch (word) {
    case DubinsWord::LSL: {
      const double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sa - sb);
      if (p_sq < 0.0) return c;
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      c.lens = {mod2pi(tmp - alpha), std::sqrt(p_sq), mod2pi(beta - tmp)};
      c.valid = true;
      return c;
    }
    case DubinsWord::RSR: {
      const double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sb - sa);
      if (p_sq < 0.0) return c;
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      c.lens = {mod2pi(alpha - tmp), std::sqrt(p_sq), mod2pi(tmp - beta)};
      c.valid = true;
      return c;
    }
    case DubinsWord::LSR: {
      const double p_sq = -2.0 + d * d + 2.0 * c_ab + 2.0 * d * (sa + sb);
      if (p_sq < 0.0) return c;
      const double p = std::sqrt(p_sq);
      const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      c.lens = {mod2pi(tmp - alpha), p, mod2pi(tmp - mod2pi(beta))};
      c.valid = true;
      return c;
    }
    case DubinsWord::RSL: {
      const double p_sq = -2.0 + d * d + 2.0 * c_ab - 2.0 * d * (sa + sb);
      if (p_sq < 0.0) return c;
      const double p = std::sqrt(p_sq);
      const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      c.lens = {mod2pi(alpha - tmp), p, mod2pi(beta - tmp)};
      c.valid = true;
      return c;
    }
    case DubinsWord::RLR: {
      const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0;
      if (std::abs(tmp) > 1.0) return c;
      const double p = mod2pi(kTwoPi - std::acos(tmp));
      const double phi = std::atan2(ca - cb, d - sa + sb);
      const double t = mod2pi(alpha - phi + mod2pi(p / 2.0));
      c.lens = {t, p, mod2pi(alpha - beta - t + mod2pi(p))};
      c.valid = true;
      return c;
    }
    case DubinsWord::LRL: {
      const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0;
      if (std::abs(tmp) > 1.0) return c;
      const double p = mod2pi(kTwoPi - std::acos(tmp));
      const double phi = std::atan2(cb - ca, d + sa - sb);
      const double t = mod2pi(phi - alpha + mod2pi(p / 2.0));
      c.lens = {t, p, mod2pi(mod2pi(beta) - alpha - t + mod2pi(p))};
      c.valid = true;
      return c;
    }
  }
  return c;
}

bool lands_on_target(const Pose& start, const std::array<Seg, 3>& segs,
                     const std::array<double, 3>& lens, double radius,
                     const Pose& target) {
  Pose p = start;
  for (int i = 0; i < 3; ++i) p = apply_segment(p, segs[i], lens[i], radius);
  const double pos_err = std::hypot(p.x - target.x, p.y - target.y);
  const double ang_err = std::abs(wrap_angle(p.psi - target.psi));
  return pos_err <= 1e-6 && ang_err <= 1e-6;
}

}  // namespace

const char* to_string(DubinsWord w) {
  switch (w) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
  }
  return "?";
}

Pose DubinsPath::pose_at(double s) const {
  const auto& segs = kWordSegments[static_cast<int>(word)];
  double remaining = s / radius;  // radius units
  Pose p = start;
  for (int i = 0; i < 3; ++i) {
    const double len = seg_lengths[i];
    if (remaining <= len) return apply_segment(p, segs[i], remaining, radius);
    p = apply_segment(p, segs[i], len, radius);
    remaining -= len;
  }
  return p;
}

std::vector<Vec2> DubinsPath::sample(double ds) const {
  const double total = length();
  const int n = std::max(1, static_cast<int>(std::ceil(total / ds)));
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const Pose p = pose_at(total * static_cast<double>(i) / n);
    pts.push_back({p.x, p.y});
  }
  return pts;
}

DubinsPath dubins_shortest_path(const Pose& a, const Pose& b, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("dubins radius must be positive");

  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dist = std::hypot(dx, dy);

  // Coincident poses: the closed forms degenerate to a full circle here, but
  // the true optimum is the empty path.
  if (dist < 1e-12 && std::abs(wrap_angle(b.psi - a.psi)) < 1e-12) {
    DubinsPath zero;
    zero.start = a;
    zero.radius = radius;
    zero.word = DubinsWord::LSL;
    zero.seg_lengths = {0.0, 0.0, 0.0};
    return zero;
  }

  const double d = dist / radius;
  const double theta = dist > 0.0 ? std::atan2(dy, dx) : 0.0;
  const double alpha = mod2pi(a.psi - theta);
  const double beta = mod2pi(b.psi - theta);

  DubinsPath best;
  best.start = a;
  best.radius = radius;
  double best_len = std::numeric_limits<double>::infinity();
  bool found = false;

  for (int wi = 0; wi < 6; ++wi) {
    const auto word = static_cast<DubinsWord>(wi);
    const Candidate c = solve_word(word, d, alpha, beta);
    if (!c.valid) continue;
    if (!lands_on_target(a, kWordSegments[wi], c.lens, radius, b)) continue;
    const double len = (c.lens[0] + c.lens[1] + c.lens[2]) * radius;
    if (len < best_len) {
      best_len = len;
      best.word = word;
      best.seg_lengths = c.lens;
      found = true;
    }
  }
  if (!found) {
    // Unreachable for positive radius; guards against a degenerate numeric corner.
    throw std::runtime_error("no dubins word landed on the target pose");
  }
  return best;
}

}  // namespace sgnav
