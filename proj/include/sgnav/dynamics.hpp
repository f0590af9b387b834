#pragma once

#include <stdexcept>

#include "sgnav/geometry.hpp"

namespace sgnav {

class ControlBoundError : public std::invalid_argument {
 public:
  explicit ControlBoundError(const std::string& what) : std::invalid_argument(what) {}
};

// Experiment vehicle constants. Defaults are the values used in the guidance
// experiments; dt matches the data sampling time.
struct VehicleParams {
  double v_max = 5.20;      // m/s
  double omega_max = 0.65;  // rad/s
  double k_acc = 7.50;      // 1/s
  double k_drag = 0.88;     // 1/s
  double u_lon_max = 0.62;  // 1/s, command range is [0, u_lon_max]
  double u_lat_max = 0.75;  // m/s^2, command range is [-u_lat_max, u_lat_max]
  double dt = 0.02;         // s
  // Below this speed the turn-rate cap omega_max applies outright; keeps the
  // u_lat/v turn-rate law finite at rest.
  double v_floor = 0.1;  // m/s

  // Command-to-speed time constant.
  double tau() const { return 1.0 / k_drag; }
};

struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;  // wrapped to (-pi, pi]
  double v = 0.0;    // in [0, v_max]

  Vec2 position() const { return {x, y}; }
  Pose pose() const { return {x, y, psi}; }
};

struct ControlInput {
  double u_lon = 0.0;
  double u_lat = 0.0;
};

// Max turn rate available at speed v: min(u_lat_max / max(v, v_floor), omega_max).
double speed_turnrate_limit(double v, const VehicleParams& params);

// One explicit Euler step at params.dt. Throws ControlBoundError for commands
// outside their ranges. Speed is clamped to [0, v_max].
VehicleState step(const VehicleState& state, const ControlInput& u,
                  const VehicleParams& params);

// Closed-form speed response under constant u_lon (ignoring the v_max clamp):
// v(t) = v_ss + (v0 - v_ss) * exp(-k_drag * t) with v_ss = k_acc * u_lon / k_drag.
double speed_closed_form(double v0, double u_lon, double t, const VehicleParams& params);

}  // namespace sgnav
