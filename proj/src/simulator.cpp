#include "sgnav/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace sgnav {

const char* to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::GoalReached: return "goal_reached";
    case RunOutcome::Timeout: return "timeout";
    case RunOutcome::Collision: return "collision";
  }
  return "?";
}

std::optional<RunOutcome> run_outcome_from_string(const std::string& s) {
  if (s == "goal_reached") return RunOutcome::GoalReached;
  if (s == "timeout") return RunOutcome::Timeout;
  if (s == "collision") return RunOutcome::Collision;
  return std::nullopt;
}

namespace {

// Cost-to-go estimate used for scoring candidate subgoals: aggregated CTG'
// samples when any exist, otherwise the optimistic straight-line time.
double ctg_estimate(const KnowledgeBase& kb, int node, const NodeSet& nodes,
                    const Vec2& goal, const AgentConfig& cfg,
                    const VehicleParams& vehicle) {
  if (!kb.ctg_samples(node).empty()) {
    return aggregate(cfg.decision.f, kb.ctg_samples(node));
  }
  return distance(nodes.positions[node], goal) / vehicle.v_max;
}

double subgoal_score(const KnowledgeBase& kb, int node, const Pose& pose,
                     const NodeSet& nodes, const Vec2& goal, const AgentConfig& cfg,
                     const VehicleParams& vehicle) {
  return distance(pose.position(), nodes.positions[node]) / vehicle.v_max +
         cfg.optimism * ctg_estimate(kb, node, nodes, goal, cfg, vehicle);
}

std::optional<int> best_scored(const KnowledgeBase& kb, const std::vector<int>& pool,
                               const Pose& pose, const NodeSet& nodes, const Vec2& goal,
                               const AgentConfig& cfg, const VehicleParams& vehicle) {
  std::optional<int> best;
  double best_score = kInf;
  for (int i : pool) {
    const double s = subgoal_score(kb, i, pose, nodes, goal, cfg, vehicle);
    if (s < best_score) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

std::optional<int> nearest_known(const KnowledgeBase& kb, const Pose& pose,
                                 const NodeSet& nodes) {
  std::optional<int> best;
  double best_d = kInf;
  for (int k : kb.known_nodes()) {
    const double d = distance(pose.position(), nodes.positions[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

}  // namespace

SubgoalSelection select_subgoal(const KnowledgeBase& kb, std::optional<int> current,
                                const Pose& pose, const std::vector<int>& vis,
                                const NodeSet& nodes, const Vec2& goal,
                                const AgentConfig& cfg, const VehicleParams& vehicle,
                                double p_explore, RngStream& rng) {
  SubgoalSelection sel;

  std::vector<int> cn;
  if (current) {
    cn = kb.connected_nodes(*current);
    sel.decision_case = classify_case(kb, *current);
  }

  // Visible nodes never before tried from here.
  std::vector<int> explore_pool;
  for (int i : vis) {
    if (current && (i == *current || std::find(cn.begin(), cn.end(), i) != cn.end())) {
      continue;
    }
    explore_pool.push_back(i);
  }

  if (!current || sel.decision_case == DecisionCase::A) {
    sel.target = best_scored(kb, explore_pool, pose, nodes, goal, cfg, vehicle);
    sel.explored = sel.target.has_value();
    if (!sel.target) sel.target = nearest_known(kb, pose, nodes);
    return sel;
  }

  if (sel.decision_case == DecisionCase::C) {
    sel.predicted = predict_next_node(kb, *current, cfg.decision);
  }

  const bool explore = rng.uniform() < p_explore && !explore_pool.empty();
  if (explore) {
    sel.target = best_scored(kb, explore_pool, pose, nodes, goal, cfg, vehicle);
    sel.explored = true;
    return sel;
  }

  // Exploit: best-valued experienced edge, visible candidates first.
  const std::vector<CandidateValue> table = evaluate_candidates(kb, *current, cfg.decision);
  std::optional<int> best_visible, best_any;
  double bv = kInf, ba = kInf;
  for (const CandidateValue& c : table) {
    if (c.value < ba) {
      ba = c.value;
      best_any = c.node;
    }
    if (std::find(vis.begin(), vis.end(), c.node) != vis.end() && c.value < bv) {
      bv = c.value;
      best_visible = c.node;
    }
  }
  sel.target = best_visible ? best_visible : best_any;
  if (!sel.target) sel.target = nearest_known(kb, pose, nodes);
  return sel;
}

ControlInput steer_to_subgoal(const VehicleState& state, const Vec2& target,
                              const std::optional<Vec2>& next_target,
                              const VehicleParams& vehicle, const AgentConfig& cfg) {
  const Vec2 to_target = target - state.position();
  const double dist = to_target.norm();
  const double bearing = dist > kGeomEps ? angle_of(to_target) : state.psi;
  const double err = wrap_angle(bearing - state.psi);

  constexpr double kHeadingGain = 2.0;
  ControlInput u;
  u.u_lat = std::clamp(kHeadingGain * err * std::max(state.v, vehicle.v_floor),
                       -vehicle.u_lat_max, vehicle.u_lat_max);

  // Upcoming turn at the target.
  double turn = 0.0;
  if (next_target) {
    const Vec2 out_dir = *next_target - target;
    if (out_dir.norm() > kGeomEps && dist > kGeomEps) {
      turn = std::abs(wrap_angle(angle_of(out_dir) - bearing));
    }
  }
  // Comfortable corner speed: full speed for gentle turns, down to a tight-arc
  // speed for reversals.
  constexpr double kSharpTurnSpeed = 1.3;  // m/s, arc radius ~2 m
  constexpr double kGentleTurn = 0.25;     // rad
  constexpr double kSharpTurn = 2.0;       // rad
  double v_turn = vehicle.v_max;
  if (turn > kGentleTurn) {
    const double a = std::min((turn - kGentleTurn) / (kSharpTurn - kGentleTurn), 1.0);
    v_turn = vehicle.v_max + a * (kSharpTurnSpeed - vehicle.v_max);
  }
  // Coasting sheds speed at k_drag per meter, so this hits v_turn right at the
  // switch distance.
  const double brake_dist = std::max(dist - cfg.arrival_radius, 0.0);
  double v_cmd = std::min(vehicle.v_max, v_turn + vehicle.k_drag * brake_dist);
  // Large heading error: slow down to tighten the arc.
  if (std::abs(err) > 0.8) v_cmd = std::min(v_cmd, kSharpTurnSpeed);

  const double u_hold = vehicle.k_drag * v_cmd / vehicle.k_acc;
  u.u_lon = std::clamp((v_cmd - state.v) + u_hold, 0.0, vehicle.u_lon_max);
  return u;
}

namespace {

ControlInput scan_control(const VehicleState& state, const VehicleParams& vehicle) {
  // Nothing to aim for: circle in place at low speed to sweep the field of view.
  ControlInput u;
  u.u_lat = vehicle.u_lat_max;
  const double v_cmd = 1.0;
  u.u_lon = std::clamp((v_cmd - state.v) + vehicle.k_drag * v_cmd / vehicle.k_acc, 0.0,
                       vehicle.u_lon_max);
  return u;
}

RunLog run_trial_impl(const Environment& env, const NodeSet& nodes,
                      const KnowledgeBase& kb, const AgentConfig& cfg,
                      const VehicleParams& vehicle, double p_explore, int run_id,
                      RngStream& rng, std::vector<DecisionRecord>* records) {
  RunLog log;
  log.run_id = run_id;
  log.dt = vehicle.dt;

  VehicleState state;
  state.x = env.start.x;
  state.y = env.start.y;
  state.psi = wrap_angle(env.start.psi);
  state.v = 0.0;

  std::optional<int> active;     // node being steered to
  std::optional<int> current;    // node last arrived at
  std::optional<int> next_hint;  // model guess for the node after `active`

  const long max_steps = static_cast<long>(std::ceil(cfg.max_duration / vehicle.dt)) + 1;
  for (long i = 0;; ++i) {
    const double t = static_cast<double>(i) * vehicle.dt;

    if (t >= cfg.max_duration || i >= max_steps) {
      log.outcome = RunOutcome::Timeout;
      break;
    }
    bool collided = false;
    for (const Polygon& poly : env.obstacles) {
      if (strictly_inside(poly, state.position())) {
        collided = true;
        break;
      }
    }
    if (collided) {
      log.outcome = RunOutcome::Collision;
      break;
    }
    if (distance(state.position(), env.goal_position) <= cfg.goal_radius) {
      log.outcome = RunOutcome::GoalReached;
      log.flight_time = t;
      break;
    }

    if (active && distance(state.position(), nodes.positions[*active]) <= cfg.arrival_radius) {
      current = *active;
      active.reset();
      next_hint.reset();
    }

    if (!active) {
      const std::vector<int> vis = visible_nodes(env, state.pose(), nodes, cfg.fov);
      const SubgoalSelection sel = select_subgoal(kb, current, state.pose(), vis, nodes,
                                                  env.goal_position, cfg, vehicle,
                                                  p_explore, rng);
      if (sel.target) {
        active = sel.target;
        if (records && current) {
          records->push_back({run_id, *current, sel.decision_case, *sel.target,
                              sel.predicted, vis});
        }
        // Guess the follow-up node so the slow-down anticipates the turn.
        next_hint.reset();
        if (*active != 0) {
          if (!kb.connected_nodes(*active).empty()) {
            next_hint = predict_next_node(kb, *active, cfg.decision);
          }
        }
      }
    }

    ControlInput u;
    if (active) {
      std::optional<Vec2> next_pos;
      if (next_hint) next_pos = nodes.positions[*next_hint];
      u = steer_to_subgoal(state, nodes.positions[*active], next_pos, vehicle, cfg);
    } else {
      u = scan_control(state, vehicle);
    }

    log.samples.push_back({t, state, u, active.value_or(-1)});
    state = step(state, u, vehicle);
  }
  return log;
}

}  // namespace

RunLog run_trial(const Environment& env, const NodeSet& nodes, const KnowledgeBase& kb,
                 const AgentConfig& cfg, const VehicleParams& vehicle) {
  RngStream rng(cfg.seed);
  return run_trial_impl(env, nodes, kb, cfg, vehicle, cfg.p_explore_init, 1, rng,
                        nullptr);
}

ExperimentResult run_experiment(const Environment& env, const NodeSet& nodes,
                                int n_runs, const AgentConfig& cfg,
                                const VehicleParams& vehicle) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  ExperimentResult result;
  RngStream rng(cfg.seed);
  KnowledgeBase kb(nodes.count());
  result.kb_history.push_back(kb);

  for (int run = 1; run <= n_runs; ++run) {
    const double p_explore =
        cfg.p_explore_init * std::pow(cfg.p_explore_decay, run - 1);
    RunLog log = run_trial_impl(env, nodes, kb, cfg, vehicle, p_explore, run, rng,
                                &result.records);
    const ParsedRun parsed = parse_run(log, nodes, cfg.node_assign_radius);
    kb.update_from_run(parsed);
    result.kb_history.push_back(kb);
    result.flight_times.push_back(log.flight_time);
    result.em_per_run.push_back(kb.exploration_metric());
    result.logs.push_back(std::move(log));
  }
  return result;
}

KnowledgeBase seed_from_benchmark(const SubgoalGraph& graph) {
  const int n = graph.nodes.count();
  KnowledgeBase kb(n);
  for (int k = 1; k < n; ++k) {
    if (!(graph.ctg[k] < kInf)) continue;
    kb.add_ctg_sample(k, graph.ctg[k]);
    const int child = graph.child_of(k);
    if (child >= 0) kb.add_edge_sample(k, child, graph.dc[k][child]);
  }
  return kb;
}

}  // namespace sgnav
