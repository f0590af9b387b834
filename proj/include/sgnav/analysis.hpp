#pragma once

#include <optional>
#include <vector>

#include "sgnav/env.hpp"
#include "sgnav/runlog.hpp"

namespace sgnav {

// Default node-assignment radius (m) and pass-smoothing window (s).
inline constexpr double kDefaultNodeRadius = 1.5;
inline constexpr double kPassSmoothingWindow = 0.5;

struct NodeVisit {
  int node = -1;
  double t = 0.0;       // time of closest approach
  double min_dist = 0.0;
};

// A run reduced to its subgoal sequence. For completed runs the sequence ends
// with node 0 and t0 is the goal time.
struct ParsedRun {
  int run_id = 0;
  std::vector<NodeVisit> sequence;
  std::optional<double> t0;
  bool completed = false;
};

// Emits one visit per below-threshold pass of each node, at the pass's
// closest-approach time; same-node events closer than the smoothing window
// are merged.
ParsedRun parse_run(const RunLog& log, const NodeSet& nodes,
                    double r_thresh = kDefaultNodeRadius);

// Union of visible_nodes over all samples with t in [t_star - t_w/2,
// t_star + t_w/2] (clipped to the log).
std::vector<int> vis_window(const RunLog& log, const NodeSet& nodes,
                            const Environment& env, double t_star, double t_w,
                            double fov);

// Trajectory piece around one corner pass, expressed in the corner frame:
// +x is the free-space wall-angle bisector, time origin at closest approach,
// reflected so the segment starts with positive y.
struct CornerSegment {
  int corner = -1;
  int source_run = 0;
  bool reflected = false;
  std::vector<double> t_c;     // uniform grid, t_c.front() = -T, t_c.back() = +T
  std::vector<Vec2> points;    // corner-frame positions
  std::vector<double> v;       // m/s
  std::vector<double> omega;   // rad/s (sign flips with reflection)

  int length() const { return static_cast<int>(t_c.size()); }
};

// Corner-frame transform of the pass at closest-approach time t_star.
// Returns nothing when the log does not span [t_star - T, t_star + T].
std::optional<CornerSegment> corner_frame_transform(const RunLog& log,
                                                    const NodeSet& nodes,
                                                    int corner, double t_star,
                                                    double T,
                                                    const VehicleParams& params);

// Convenience wrapper: transforms the pass at the global closest approach to
// the corner.
std::optional<CornerSegment> corner_frame_transform(const RunLog& log,
                                                    const NodeSet& nodes,
                                                    int corner, double T,
                                                    const VehicleParams& params);

// All corner passes (parse events at non-goal nodes) of a set of logs that
// span the full window.
std::vector<CornerSegment> extract_corner_segments(
    const std::vector<RunLog>& logs, const NodeSet& nodes, double T,
    const VehicleParams& params, double r_thresh = kDefaultNodeRadius);

enum class SegmentWeight {
  // w = 1 - |t_c - T| / 2T, as printed in the distance definition.
  Verbatim,
  // w = 1 - |t_c| / T, peaking at the corner instead of the segment end.
  CornerPeaked,
};

double segment_weight(double t_c, double T, SegmentWeight kind);

// Time-aligned weighted distance between two segments on identical grids.
double segment_distance(const CornerSegment& a, const CornerSegment& b,
                        SegmentWeight kind = SegmentWeight::Verbatim);

struct PrimitiveCluster {
  std::vector<int> members;  // indices into the segment list
  double frequency = 0.0;
  // Pointwise means across members.
  std::vector<Vec2> mean_points;
  std::vector<double> mean_v;
  std::vector<double> mean_omega;
  double V = 0.0;    // weighted overall mean speed
  double U_v = 0.0;  // weighted mean pointwise speed std (population)
};

// Bottom-up average-linkage clustering down to n_clusters, ordered by
// descending frequency (ties: earliest member id).
std::vector<PrimitiveCluster> cluster_segments(
    const std::vector<CornerSegment>& segments, int n_clusters,
    SegmentWeight kind = SegmentWeight::Verbatim);

// Average inter-cluster segment distance.
double cluster_distance(const std::vector<CornerSegment>& segments,
                        const PrimitiveCluster& a, const PrimitiveCluster& b,
                        SegmentWeight kind = SegmentWeight::Verbatim);

// match[j] = index of the reference cluster greedily paired with other[j] by
// minimal inter-cluster distance.
std::vector<int> match_clusters(const std::vector<CornerSegment>& ref_segments,
                                const std::vector<PrimitiveCluster>& reference,
                                const std::vector<CornerSegment>& other_segments,
                                const std::vector<PrimitiveCluster>& other,
                                SegmentWeight kind = SegmentWeight::Verbatim);

struct ClusterStats {
  double V = 0.0;
  double U_v = 0.0;
  double frequency = 0.0;
};

ClusterStats cluster_stats(const std::vector<CornerSegment>& segments,
                           const PrimitiveCluster& cluster, double T,
                           SegmentWeight kind = SegmentWeight::Verbatim);

struct BehaviorMetrics {
  double high_speed_frequency = 0.0;  // share of near-corner samples at >= 90% v_max
  double mean_r_min = 0.0;            // mean closest distance over corner passes
  double proximity_frequency = 0.0;   // share of points within radius of a corner
  int corner_passes = 0;
};

// `points` defaults to the logged positions when empty (a gaze stream may be
// supplied instead).
BehaviorMetrics behavior_metrics(const std::vector<RunLog>& logs,
                                 const NodeSet& nodes, double v_max,
                                 double near_corner_window,
                                 double proximity_radius = 1.0,
                                 const std::vector<Vec2>& points = {},
                                 double r_thresh = kDefaultNodeRadius);

}  // namespace sgnav
