#include "sgnav/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <stdexcept>
#include <thread>

namespace sgnav {

int SubgoalGraph::child_of(int k) const {
  const int n = static_cast<int>(q.size());
  if (k < 0 || k >= n) return -1;
  for (int i = 0; i < n; ++i) {
    if (q[k][i] == 1) return i;
  }
  return -1;
}

namespace {

bool dubins_path_clear(const Environment& env, const DubinsPath& path, double ds,
                       double clearance) {
  for (const Vec2& p : path.sample(ds)) {
    for (const Polygon& poly : env.obstacles) {
      if (obstacle_depth(poly, p) > clearance) return false;
    }
  }
  return true;
}

void parallel_rows(int n, const std::function<void(int)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n));
  if (workers <= 1 || n < 8) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) body(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

namespace {

Matrix build_dc_impl(const Environment& env, const NodeSet& nodes,
                     const BenchmarkOptions& opts, const VehicleParams& vehicle,
                     Matrix* headings_out) {
  const int n = nodes.count();
  const BoolMatrix vis = visibility_graph(env, nodes);

  Matrix pm(n, std::vector<double>(n, kInf));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (k == i || !vis[k][i]) continue;
      pm[k][i] = distance(nodes.positions[k], nodes.positions[i]) / vehicle.v_max;
    }
  }
  if (opts.mode == CostMode::PointMass) return pm;

  // Dubins transitions need a heading at every node. The visibility-edge rule
  // fixes the arrival heading at a transition's end node to the edge
  // direction; a node's own departure heading is therefore the direction
  // toward its child in the graph. Children come from a point-mass solve, so
  // an edge's cost is its straight leg plus the turn onto the next leg.
  const CtgSolution pm_sol = solve_ctg(pm);
  std::vector<std::optional<double>> node_heading(n);
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (pm_sol.q[k][i] == 1) {
        node_heading[k] = angle_of(nodes.positions[i] - nodes.positions[k]);
        break;
      }
    }
  }

  Matrix dc(n, std::vector<double>(n, kInf));
  if (headings_out) headings_out->assign(n, std::vector<double>(n, 0.0));
  parallel_rows(n, [&](int k) {
    for (int i = 0; i < n; ++i) {
      if (k == i || !vis[k][i]) continue;
      const double edge_dir = angle_of(nodes.positions[i] - nodes.positions[k]);
      const double psi_start = node_heading[k].value_or(edge_dir);
      const double psi_end = node_heading[i].value_or(edge_dir);
      const Pose a{nodes.positions[k].x, nodes.positions[k].y, psi_start};
      const Pose b{nodes.positions[i].x, nodes.positions[i].y, psi_end};
      const DubinsPath path = dubins_shortest_path(a, b, opts.dubins_radius);
      if (!dubins_path_clear(env, path, opts.sample_ds, opts.corner_clearance)) continue;
      dc[k][i] = path.length() / vehicle.v_max;
      if (headings_out) (*headings_out)[k][i] = psi_end;
    }
  });
  return dc;
}

}  // namespace

Matrix build_dc_matrix(const Environment& env, const NodeSet& nodes,
                       const BenchmarkOptions& opts, const VehicleParams& vehicle) {
  return build_dc_impl(env, nodes, opts, vehicle, nullptr);
}

CtgSolution solve_ctg(const Matrix& dc) {
  const int n = static_cast<int>(dc.size());
  CtgSolution sol;
  sol.ctg.assign(n, kInf);
  sol.q.assign(n, std::vector<int>(n, 0));
  if (n == 0) return sol;
  sol.ctg[0] = 0.0;

  // Dijkstra from the goal over reversed edges.
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::vector<bool> settled(n, false);
  open.push({0.0, 0});
  while (!open.empty()) {
    const auto [cost, i] = open.top();
    open.pop();
    if (settled[i]) continue;
    settled[i] = true;
    for (int k = 1; k < n; ++k) {
      if (k == i || settled[k]) continue;
      const double w = dc[k][i];
      if (!(w < kInf)) continue;
      const double cand = w + cost;
      if (cand < sol.ctg[k]) {
        sol.ctg[k] = cand;
        open.push({cand, k});
      }
    }
  }

  for (int k = 1; k < n; ++k) {
    if (!(sol.ctg[k] < kInf)) {
      sol.unreachable.push_back(k);
      continue;
    }
    int best = -1;
    double best_val = kInf;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double val = dc[k][i] + sol.ctg[i];
      if (val < best_val) {
        best_val = val;
        best = i;
      }
    }
    sol.q[k][best] = 1;
  }
  return sol;
}

SubgoalGraph build_subgoal_graph(const Environment& env, const NodeSet& nodes,
                                 const BenchmarkOptions& opts,
                                 const VehicleParams& vehicle) {
  SubgoalGraph g;
  g.nodes = nodes;
  g.mode = opts.mode;
  if (opts.mode == CostMode::Dubins) {
    Matrix headings;
    g.dc = build_dc_impl(env, nodes, opts, vehicle, &headings);
    g.headings = std::move(headings);
  } else {
    g.dc = build_dc_impl(env, nodes, opts, vehicle, nullptr);
  }
  CtgSolution sol = solve_ctg(g.dc);
  g.ctg = std::move(sol.ctg);
  g.q = std::move(sol.q);
  g.unreachable = std::move(sol.unreachable);
  return g;
}

std::vector<int> optimal_sequence(const Environment& env, const SubgoalGraph& graph,
                                  const Vec2& from_position,
                                  const VehicleParams& vehicle) {
  const int n = graph.nodes.count();
  int first = -1;
  double best = kInf;
  for (int i = 0; i < n; ++i) {
    if (!(graph.ctg[i] < kInf)) continue;
    if (!line_of_sight(env, from_position, graph.nodes.positions[i])) continue;
    const double val =
        distance(from_position, graph.nodes.positions[i]) / vehicle.v_max + graph.ctg[i];
    if (val < best) {
      best = val;
      first = i;
    }
  }
  if (first < 0) {
    throw std::runtime_error("no visible node can reach the goal from this position");
  }
  std::vector<int> seq{first};
  int cur = first;
  while (cur != 0) {
    const int child = graph.child_of(cur);
    if (child < 0 || static_cast<int>(seq.size()) > n) {
      throw std::runtime_error("connection matrix does not lead to the goal");
    }
    seq.push_back(child);
    cur = child;
  }
  return seq;
}

}  // namespace sgnav
