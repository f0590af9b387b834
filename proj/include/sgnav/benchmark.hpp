#pragma once

#include <optional>
#include <vector>

#include "sgnav/dubins.hpp"
#include "sgnav/dynamics.hpp"
#include "sgnav/env.hpp"

namespace sgnav {

using Matrix = std::vector<std::vector<double>>;
using IntMatrix = std::vector<std::vector<int>>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class CostMode { PointMass, Dubins };

// Optimal (benchmark) subgoal graph over a node set: transition costs DC (s),
// cost-to-go CTG (s), and the one-hot connection matrix Q. `headings` holds
// the arrival heading of each feasible Dubins transition (Dubins mode only).
struct SubgoalGraph {
  NodeSet nodes;
  CostMode mode = CostMode::PointMass;
  Matrix dc;
  std::vector<double> ctg;
  IntMatrix q;
  std::optional<Matrix> headings;
  std::vector<int> unreachable;

  int child_of(int k) const;  // -1 when k has no outgoing edge
};

struct BenchmarkOptions {
  CostMode mode = CostMode::PointMass;
  double dubins_radius = 1.0;  // m
  // Grazing clearance: a sampled Dubins path point collides only when it
  // penetrates an obstacle deeper than this.
  double corner_clearance = 0.05;  // m
  double sample_ds = 0.05;         // m
};

// DC[k][i]: time to transit node k -> node i, infinity when infeasible.
// Point-mass mode: straight-line time over visibility edges. Dubins mode:
// shortest bounded-curvature path between the node poses, collision-checked.
Matrix build_dc_matrix(const Environment& env, const NodeSet& nodes,
                       const BenchmarkOptions& opts, const VehicleParams& vehicle);

struct CtgSolution {
  std::vector<double> ctg;
  IntMatrix q;
  std::vector<int> unreachable;
};

// Bellman fixed point CTG_k = min_i (DC_ki + CTG_i), solved as a one-to-all
// shortest path from the goal over reversed edges. Argmin ties break toward
// the lowest node index.
CtgSolution solve_ctg(const Matrix& dc);

SubgoalGraph build_subgoal_graph(const Environment& env, const NodeSet& nodes,
                                 const BenchmarkOptions& opts,
                                 const VehicleParams& vehicle);

// Subgoal sequence from a free-space position to the goal: the first node
// minimizes straight-line time plus CTG over nodes with line of sight, then Q
// child pointers lead to node 0. Throws when nothing visible can reach the goal.
std::vector<int> optimal_sequence(const Environment& env, const SubgoalGraph& graph,
                                  const Vec2& from_position,
                                  const VehicleParams& vehicle);

}  // namespace sgnav
