#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgnav/dynamics.hpp"

namespace sgnav {

enum class RunOutcome { GoalReached, Timeout, Collision };

const char* to_string(RunOutcome o);
std::optional<RunOutcome> run_outcome_from_string(const std::string& s);

struct LogSample {
  double t = 0.0;
  VehicleState state;
  ControlInput u;
  int active_subgoal = -1;  // -1 = none
};

// Time series of one trial at fixed dt. flight_time is set iff the goal was
// reached.
struct RunLog {
  int run_id = 0;
  std::vector<LogSample> samples;
  RunOutcome outcome = RunOutcome::Timeout;
  std::optional<double> flight_time;
  double dt = 0.02;

  double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
};

}  // namespace sgnav
