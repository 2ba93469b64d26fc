#include "exhand/wallctl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exhand/error.hpp"

namespace exhand {

void WallParams::validate() const {
  if (!(k >= 0.0)) throw ConfigError("wall.k must be >= 0");
  if (!(b >= 0.0)) throw ConfigError("wall.b must be >= 0");
  if (!(F_offset >= 0.0)) throw ConfigError("wall.F_offset must be >= 0");
}

double estimate_velocity(double q, ControllerState& state, double T, double cutoff_hz) {
  if (!(T > 0.0)) throw std::invalid_argument("estimate_velocity: T must be > 0");
  double raw = 0.0;
  if (state.initialized) {
    raw = (q - state.q_prev) / T;
  }
  state.q_prev = q;
  if (cutoff_hz <= 0.0) {
    state.initialized = true;
    return raw;
  }
  if (!state.initialized) {
    state.initialized = true;
    state.qdot_filtered = 0.0;
    return 0.0;
  }
  const double tau = 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
  const double alpha = T / (tau + T);
  state.qdot_filtered += alpha * (raw - state.qdot_filtered);
  return state.qdot_filtered;
}

double pullback_force(double qdot, double F_offset) { return qdot >= 0.0 ? 0.0 : F_offset; }

WallOutput wall_tick(double q, double qdot, const WallParams& p) {
  const double F0 = pullback_force(qdot, p.F_offset);
  if (q >= p.q_lim) {
    return {std::max(0.0, p.b * qdot + p.k * (q - p.q_lim) + F0), true};
  }
  return {F0, false};
}

double force_to_current(double F_set, const ForceCalib& calib) {
  if (F_set < 0.0) throw std::invalid_argument("force_to_current: force must be >= 0");
  return F_set / calib.K_F;
}

}  // namespace exhand
