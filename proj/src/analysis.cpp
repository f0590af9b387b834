#include "sgnav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgnav {

namespace {

struct Pass {
  int node;
  double t;
  double dist;
};

// Below-threshold intervals of the distance series to one node, one event per
// interval at the raw argmin; intervals separated by less than the smoothing
// window are treated as one pass.
void node_passes(const RunLog& log, const Vec2& node_pos, int node, double r_thresh,
                 std::vector<Pass>& out) {
  const std::size_t n = log.samples.size();
  std::size_t i = 0;
  double last_end_t = -std::numeric_limits<double>::infinity();
  while (i < n) {
    if (distance(log.samples[i].state.position(), node_pos) >= r_thresh) {
      ++i;
      continue;
    }
    std::size_t j = i;
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best_idx = i;
    while (j < n && distance(log.samples[j].state.position(), node_pos) < r_thresh) {
      const double d = distance(log.samples[j].state.position(), node_pos);
      if (d < best_d) {
        best_d = d;
        best_idx = j;
      }
      ++j;
    }
    const double start_t = log.samples[i].t;
    if (!out.empty() && start_t - last_end_t < kPassSmoothingWindow) {
      // Same pass re-entered after a blip; keep the closer point.
      Pass& prev = out.back();
      if (best_d < prev.dist) {
        prev.dist = best_d;
        prev.t = log.samples[best_idx].t;
      }
    } else {
      out.push_back({node, log.samples[best_idx].t, best_d});
    }
    last_end_t = log.samples[j - 1].t;
    i = j;
  }
}

}  // namespace

ParsedRun parse_run(const RunLog& log, const NodeSet& nodes, double r_thresh) {
  ParsedRun parsed;
  parsed.run_id = log.run_id;
  if (log.samples.empty()) return parsed;

  std::vector<Pass> events;
  for (int k = 0; k < nodes.count(); ++k) {
    std::vector<Pass> per_node;
    node_passes(log, nodes.positions[k], k, r_thresh, per_node);
    events.insert(events.end(), per_node.begin(), per_node.end());
  }
  std::sort(events.begin(), events.end(), [](const Pass& a, const Pass& b) {
    if (a.t != b.t) return a.t < b.t;
    // The goal sorts last on time ties so completed runs end with node 0.
    const bool ag = a.node == 0, bg = b.node == 0;
    if (ag != bg) return bg;
    return a.node < b.node;
  });

  for (const Pass& e : events) {
    if (!parsed.sequence.empty() && parsed.sequence.back().node == e.node) {
      if (e.dist < parsed.sequence.back().min_dist) {
        parsed.sequence.back().min_dist = e.dist;
        parsed.sequence.back().t = e.t;
      }
      continue;
    }
    parsed.sequence.push_back({e.node, e.t, e.dist});
  }

  if (log.outcome == RunOutcome::GoalReached && !parsed.sequence.empty() &&
      parsed.sequence.back().node == 0) {
    parsed.completed = true;
    parsed.t0 = parsed.sequence.back().t;
  }
  return parsed;
}

std::vector<int> vis_window(const RunLog& log, const NodeSet& nodes,
                            const Environment& env, double t_star, double t_w,
                            double fov) {
  std::vector<bool> seen(nodes.count(), false);
  const double lo = t_star - 0.5 * t_w;
  const double hi = t_star + 0.5 * t_w;
  for (const LogSample& s : log.samples) {
    if (s.t < lo - 1e-12 || s.t > hi + 1e-12) continue;
    for (int i : visible_nodes(env, s.state.pose(), nodes, fov)) seen[i] = true;
  }
  std::vector<int> out;
  for (int i = 0; i < nodes.count(); ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

std::optional<CornerSegment> corner_frame_transform(const RunLog& log,
                                                    const NodeSet& nodes,
                                                    int corner, double t_star,
                                                    double T,
                                                    const VehicleParams& params) {
  if (corner < 1 || corner >= nodes.count()) return std::nullopt;
  const std::size_t n = log.samples.size();
  if (n == 0) return std::nullopt;

  // Locate the sample at t_star; the grid then aligns with the log.
  std::size_t idx = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = std::abs(log.samples[i].t - t_star);
    if (gap < best) {
      best = gap;
      idx = i;
    }
  }
  const int half = static_cast<int>(std::llround(T / log.dt));
  if (static_cast<int>(idx) - half < 0 || idx + half >= n) return std::nullopt;

  const CornerMeta& meta = nodes.meta[corner];
  const Vec2 origin = nodes.positions[corner];
  const double rot = -meta.free_bisector();

  CornerSegment seg;
  seg.corner = corner;
  seg.source_run = log.run_id;
  const int len = 2 * half + 1;
  seg.t_c.reserve(len);
  seg.points.reserve(len);
  seg.v.reserve(len);
  seg.omega.reserve(len);
  for (int j = -half; j <= half; ++j) {
    const LogSample& s = log.samples[idx + j];
    seg.t_c.push_back(j * log.dt);
    seg.points.push_back((s.state.position() - origin).rotated(rot));
    seg.v.push_back(s.state.v);
    const double omega_mag =
        std::min(std::abs(s.u.u_lat) / std::max(s.state.v, params.v_floor),
                 params.omega_max);
    seg.omega.push_back(s.u.u_lat >= 0.0 ? omega_mag : -omega_mag);
  }

  // Canonical handedness: the segment starts on the +y side.
  double y0 = 0.0;
  for (const Vec2& p : seg.points) {
    if (std::abs(p.y) > kGeomEps) {
      y0 = p.y;
      break;
    }
  }
  if (y0 < 0.0) {
    seg.reflected = true;
    for (Vec2& p : seg.points) p.y = -p.y;
    for (double& w : seg.omega) w = -w;
  }
  return seg;
}

std::optional<CornerSegment> corner_frame_transform(const RunLog& log,
                                                    const NodeSet& nodes,
                                                    int corner, double T,
                                                    const VehicleParams& params) {
  if (corner < 1 || corner >= nodes.count() || log.samples.empty()) return std::nullopt;
  const Vec2 pos = nodes.positions[corner];
  double best = std::numeric_limits<double>::infinity();
  double t_star = 0.0;
  for (const LogSample& s : log.samples) {
    const double d = distance(s.state.position(), pos);
    if (d < best) {
      best = d;
      t_star = s.t;
    }
  }
  return corner_frame_transform(log, nodes, corner, t_star, T, params);
}

std::vector<CornerSegment> extract_corner_segments(
    const std::vector<RunLog>& logs, const NodeSet& nodes, double T,
    const VehicleParams& params, double r_thresh) {
  std::vector<CornerSegment> out;
  for (const RunLog& log : logs) {
    const ParsedRun parsed = parse_run(log, nodes, r_thresh);
    for (const NodeVisit& visit : parsed.sequence) {
      if (visit.node == 0) continue;
      auto seg = corner_frame_transform(log, nodes, visit.node, visit.t, T, params);
      if (seg) out.push_back(std::move(*seg));
    }
  }
  return out;
}

double segment_weight(double t_c, double T, SegmentWeight kind) {
  if (kind == SegmentWeight::Verbatim) return 1.0 - std::abs(t_c - T) / (2.0 * T);
  return 1.0 - std::abs(t_c) / T;
}

double segment_distance(const CornerSegment& a, const CornerSegment& b,
                        SegmentWeight kind) {
  if (a.length() != b.length()) {
    throw std::invalid_argument("segment grids differ in length");
  }
  const int len = a.length();
  if (len == 0) return 0.0;
  const double T = a.t_c.back();
  double acc = 0.0;
  for (int l = 0; l < len; ++l) {
    if (std::abs(a.t_c[l] - b.t_c[l]) > 1e-9) {
      throw std::invalid_argument("segment grids are not aligned");
    }
    acc += segment_weight(a.t_c[l], T, kind) * distance(a.points[l], b.points[l]);
  }
  return acc;
}

namespace {

std::vector<std::vector<double>> pairwise_distances(
    const std::vector<CornerSegment>& segments, SegmentWeight kind) {
  const int n = static_cast<int>(segments.size());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = segment_distance(segments[i], segments[j], kind);
    }
  }
  return d;
}

}  // namespace

std::vector<PrimitiveCluster> cluster_segments(
    const std::vector<CornerSegment>& segments, int n_clusters,
    SegmentWeight kind) {
  const int n = static_cast<int>(segments.size());
  if (n == 0) return {};
  if (n_clusters < 1 || n_clusters > n) {
    throw std::invalid_argument("n_clusters must be in [1, #segments]");
  }

  const auto base = pairwise_distances(segments, kind);
  std::vector<std::vector<int>> members(n);
  std::vector<bool> alive(n, true);
  // Average-linkage distances between active clusters, kept exact via the
  // size-weighted merge update.
  std::vector<std::vector<double>> link = base;
  for (int i = 0; i < n; ++i) members[i] = {i};

  int active = n;
  while (active > n_clusters) {
    int bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        if (link[i][j] < best) {
          best = link[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    const double si = members[bi].size();
    const double sj = members[bj].size();
    for (int k = 0; k < n; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      const double merged = (si * link[k][bi] + sj * link[k][bj]) / (si + sj);
      link[k][bi] = link[bi][k] = merged;
    }
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    std::sort(members[bi].begin(), members[bi].end());
    alive[bj] = false;
    --active;
  }

  std::vector<PrimitiveCluster> out;
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    PrimitiveCluster c;
    c.members = members[i];
    c.frequency = static_cast<double>(members[i].size()) / n;
    const int len = segments[c.members.front()].length();
    c.mean_points.assign(len, Vec2{});
    c.mean_v.assign(len, 0.0);
    c.mean_omega.assign(len, 0.0);
    for (int m : c.members) {
      for (int l = 0; l < len; ++l) {
        c.mean_points[l] = c.mean_points[l] + segments[m].points[l];
        c.mean_v[l] += segments[m].v[l];
        c.mean_omega[l] += segments[m].omega[l];
      }
    }
    const double cnt = static_cast<double>(c.members.size());
    for (int l = 0; l < len; ++l) {
      c.mean_points[l] = c.mean_points[l] / cnt;
      c.mean_v[l] /= cnt;
      c.mean_omega[l] /= cnt;
    }
    const double T = segments[c.members.front()].t_c.back();
    const ClusterStats stats = cluster_stats(segments, c, T, kind);
    c.V = stats.V;
    c.U_v = stats.U_v;
    out.push_back(std::move(c));
  }

  std::sort(out.begin(), out.end(), [](const PrimitiveCluster& a, const PrimitiveCluster& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.members.front() < b.members.front();
  });
  return out;
}

double cluster_distance(const std::vector<CornerSegment>& segments,
                        const PrimitiveCluster& a, const PrimitiveCluster& b,
                        SegmentWeight kind) {
  double acc = 0.0;
  for (int i : a.members) {
    for (int j : b.members) {
      acc += segment_distance(segments[i], segments[j], kind);
    }
  }
  return acc / (static_cast<double>(a.members.size()) * b.members.size());
}

std::vector<int> match_clusters(const std::vector<CornerSegment>& ref_segments,
                                const std::vector<PrimitiveCluster>& reference,
                                const std::vector<CornerSegment>& other_segments,
                                const std::vector<PrimitiveCluster>& other,
                                SegmentWeight kind) {
  struct Pair {
    double d;
    int ref;
    int oth;
  };
  std::vector<Pair> pairs;
  for (std::size_t I = 0; I < reference.size(); ++I) {
    for (std::size_t J = 0; J < other.size(); ++J) {
      // Cross-clustering distance: mean segment distance over all pairs.
      double acc = 0.0;
      for (int i : reference[I].members) {
        for (int j : other[J].members) {
          acc += segment_distance(ref_segments[i], other_segments[j], kind);
        }
      }
      acc /= static_cast<double>(reference[I].members.size()) * other[J].members.size();
      pairs.push_back({acc, static_cast<int>(I), static_cast<int>(J)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.ref != b.ref) return a.ref < b.ref;
    return a.oth < b.oth;
  });

  std::vector<int> match(other.size(), -1);
  std::vector<bool> ref_used(reference.size(), false);
  for (const Pair& p : pairs) {
    if (ref_used[p.ref] || match[p.oth] != -1) continue;
    match[p.oth] = p.ref;
    ref_used[p.ref] = true;
  }
  return match;
}

ClusterStats cluster_stats(const std::vector<CornerSegment>& segments,
                           const PrimitiveCluster& cluster, double T,
                           SegmentWeight kind) {
  ClusterStats stats;
  stats.frequency = cluster.frequency;
  if (cluster.members.empty()) return stats;
  const CornerSegment& first = segments[cluster.members.front()];
  const int len = first.length();
  const double cnt = static_cast<double>(cluster.members.size());

  double w_sum = 0.0, v_sum = 0.0, s_sum = 0.0;
  for (int l = 0; l < len; ++l) {
    double mean = 0.0;
    for (int m : cluster.members) mean += segments[m].v[l];
    mean /= cnt;
    double var = 0.0;
    for (int m : cluster.members) {
      const double d = segments[m].v[l] - mean;
      var += d * d;
    }
    var /= cnt;  // population convention
    const double w = segment_weight(first.t_c[l], T, kind);
    w_sum += w;
    v_sum += w * mean;
    s_sum += w * std::sqrt(var);
  }
  if (w_sum > 0.0) {
    stats.V = v_sum / w_sum;
    stats.U_v = s_sum / w_sum;
  }
  return stats;
}

BehaviorMetrics behavior_metrics(const std::vector<RunLog>& logs,
                                 const NodeSet& nodes, double v_max,
                                 double near_corner_window,
                                 double proximity_radius,
                                 const std::vector<Vec2>& points,
                                 double r_thresh) {
  BehaviorMetrics m;

  double r_min_sum = 0.0;
  long hs_count = 0, near_count = 0;
  for (const RunLog& log : logs) {
    const ParsedRun parsed = parse_run(log, nodes, r_thresh);
    std::vector<double> pass_times;
    for (const NodeVisit& visit : parsed.sequence) {
      if (visit.node == 0) continue;
      pass_times.push_back(visit.t);
      r_min_sum += visit.min_dist;
      ++m.corner_passes;
    }
    if (pass_times.empty()) continue;
    for (const LogSample& s : log.samples) {
      bool near = false;
      for (double pt : pass_times) {
        if (std::abs(s.t - pt) <= near_corner_window) {
          near = true;
          break;
        }
      }
      if (!near) continue;
      ++near_count;
      if (s.state.v >= 0.9 * v_max) ++hs_count;
    }
  }
  if (m.corner_passes > 0) m.mean_r_min = r_min_sum / m.corner_passes;
  if (near_count > 0) {
    m.high_speed_frequency = static_cast<double>(hs_count) / near_count;
  }

  const std::vector<Vec2>* stream = &points;
  std::vector<Vec2> positions;
  if (points.empty()) {
    for (const RunLog& log : logs) {
      for (const LogSample& s : log.samples) positions.push_back(s.state.position());
    }
    stream = &positions;
  }
  if (!stream->empty()) {
    long close = 0;
    for (const Vec2& p : *stream) {
      for (int k = 1; k < nodes.count(); ++k) {
        if (distance(p, nodes.positions[k]) <= proximity_radius) {
          ++close;
          break;
        }
      }
    }
    m.proximity_frequency = static_cast<double>(close) / stream->size();
  }
  return m;
}

}  // namespace sgnav
