#include "sgnav/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace sgnav {

double speed_turnrate_limit(double v, const VehicleParams& params) {
  const double v_eff = std::max(v, params.v_floor);
  return std::min(params.u_lat_max / v_eff, params.omega_max);
}

VehicleState step(const VehicleState& state, const ControlInput& u,
                  const VehicleParams& params) {
  if (u.u_lon < 0.0 || u.u_lon > params.u_lon_max) {
    throw ControlBoundError("u_lon out of [0, " + std::to_string(params.u_lon_max) + "]");
  }
  if (std::abs(u.u_lat) > params.u_lat_max) {
    throw ControlBoundError("|u_lat| exceeds " + std::to_string(params.u_lat_max));
  }

  const double v_eff = std::max(state.v, params.v_floor);
  const double omega_mag = std::min(std::abs(u.u_lat) / v_eff, params.omega_max);
  const double psi_dot = u.u_lat >= 0.0 ? omega_mag : -omega_mag;
  const double v_dot = params.k_acc * u.u_lon - params.k_drag * state.v;

  VehicleState next;
  next.x = state.x + state.v * std::cos(state.psi) * params.dt;
  next.y = state.y + state.v * std::sin(state.psi) * params.dt;
  next.psi = wrap_angle(state.psi + psi_dot * params.dt);
  next.v = std::clamp(state.v + v_dot * params.dt, 0.0, params.v_max);
  return next;
}

double speed_closed_form(double v0, double u_lon, double t, const VehicleParams& params) {
  const double v_ss = params.k_acc * u_lon / params.k_drag;
  return v_ss + (v0 - v_ss) * std::exp(-params.k_drag * t);
}

}  // namespace sgnav
