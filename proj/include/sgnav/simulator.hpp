#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sgnav/benchmark.hpp"
#include "sgnav/decision.hpp"
#include "sgnav/env.hpp"
#include "sgnav/knowledge.hpp"
#include "sgnav/runlog.hpp"

namespace sgnav {

// Deterministic uniform doubles from a fixed 64-bit engine; identical across
// platforms for a given seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

struct AgentConfig {
  DecisionParams decision;
  double fov = 1.0471975511965976;  // 60 degrees
  double p_explore_init = 0.5;
  double p_explore_decay = 0.85;  // per run
  double optimism = 1.0;          // weight on the cost-to-go estimate
  double arrival_radius = 1.0;    // m, subgoal switch distance
  double goal_radius = 1.5;       // m
  double max_duration = 120.0;    // s
  double node_assign_radius = kDefaultNodeRadius;  // m, for run parsing
  std::uint64_t seed = 1;
};

struct SubgoalSelection {
  std::optional<int> target;
  DecisionCase decision_case = DecisionCase::A;
  int predicted = -1;  // model pick, case C only
  bool explored = false;
};

// One subgoal choice. `current` is the node just reached (nullopt before the
// first arrival). Exploitation follows the decision model, preferring visible
// candidates; exploration (probability p_explore) heads for the best-scoring
// unexperienced visible node. With nothing visible, falls back to the nearest
// known node; target stays empty only when the agent knows nothing at all.
SubgoalSelection select_subgoal(const KnowledgeBase& kb, std::optional<int> current,
                                const Pose& pose, const std::vector<int>& vis,
                                const NodeSet& nodes, const Vec2& goal,
                                const AgentConfig& cfg, const VehicleParams& vehicle,
                                double p_explore, RngStream& rng);

// Proportional heading control with anticipatory slow-down sized to the turn
// expected at the target. Outputs always satisfy the command bounds.
ControlInput steer_to_subgoal(const VehicleState& state, const Vec2& target,
                              const std::optional<Vec2>& next_target,
                              const VehicleParams& vehicle,
                              const AgentConfig& cfg);

// One closed-loop trial: perceive -> select -> steer -> step, logged at every
// dt. Does not modify kb. Never throws; failures surface as the log outcome.
RunLog run_trial(const Environment& env, const NodeSet& nodes, const KnowledgeBase& kb,
                 const AgentConfig& cfg, const VehicleParams& vehicle);

struct ExperimentResult {
  std::vector<RunLog> logs;
  // kb_history[r] is the knowledge base before run r+1; back() is final.
  std::vector<KnowledgeBase> kb_history;
  std::vector<DecisionRecord> records;
  std::vector<std::optional<double>> flight_times;
  std::vector<double> em_per_run;
};

// n_runs sequential trials sharing one evolving knowledge base. Each run is
// parsed from its log and folded in; exploration probability decays
// geometrically per run.
ExperimentResult run_experiment(const Environment& env, const NodeSet& nodes,
                                int n_runs, const AgentConfig& cfg,
                                const VehicleParams& vehicle);

// Fully-learned knowledge base: one CTG' sample per reachable node and one
// DC' sample per benchmark edge.
KnowledgeBase seed_from_benchmark(const SubgoalGraph& graph);

}  // namespace sgnav
