#pragma once

#include "exhand/plant.hpp"

namespace exhand {

/// Virtual wall gains and position. q_lim is in the same cable coordinates
/// as the encoder reading.
struct WallParams {
  double k = 0.0;         // N/m
  double b = 0.0;         // Ns/m
  double F_offset = 1.0;  // N, pullback force while the cable retracts
  double q_lim = 0.0;     // m
  void validate() const;
};

/// Memory for the encoder velocity estimate.
struct ControllerState {
  double q_prev = 0.0;
  bool initialized = false;
  double qdot_filtered = 0.0;
};

/// Backward difference (q - q_prev) / T, 0 on the first tick.
///
/// With cutoff_hz > 0 the difference is passed through a first-order
/// low-pass discretized at T; cutoff_hz == 0 disables the filter.
double estimate_velocity(double q, ControllerState& state, double T, double cutoff_hz = 0.0);

/// 0 while the cable is pulled out (qdot >= 0), F_offset while it retracts.
double pullback_force(double qdot, double F_offset);

struct WallOutput {
  double F_set;  // N, never negative
  bool contact;
};

/// Spring-damper wall: in contact (q >= q_lim)
///   F = max(0, b qdot + k (q - q_lim) + F0),
/// otherwise F = F0.
WallOutput wall_tick(double q, double qdot, const WallParams& p);

/// I = F / K_F. Saturation is applied drive-side by apply_current.
/// Throws std::invalid_argument for negative force.
double force_to_current(double F_set, const ForceCalib& calib);

}  // namespace exhand
