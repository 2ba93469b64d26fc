#pragma once

#include <numbers>

#include "exhand/rng.hpp"

namespace exhand {

/// Cable-space mechanical state. x is the cable payout, positive in the
/// falling / closing direction.
struct PlantState {
  double x = 0.0;  // m
  double v = 0.0;  // m/s
};

/// Lumped load on the cable: dropped mass or operator finger.
struct PlantParams {
  double m = 0.5;             // kg
  double g = 9.81;            // m/s^2, along +x
  double c_visc = 5.0;        // Ns/m, Bowden cable viscous loss
  double F_coulomb = 0.2;     // N
  double m_reflected = 0.01;  // kg, rotor inertia seen at the cable

  double total_mass() const { return m + m_reflected; }
  void validate() const;
};

/// Table I resolutions and drive limits.
///
/// The glove joint-angle channel (11 stable bits) has no consumer in the
/// simulation and is only recorded here.
struct QuantizerSpec {
  int encoder_counts_per_rev = 4000;  // 1000-line quadrature, x4 decoding
  double pulley_radius = 0.01;        // m
  double current_step = 0.0472;       // A
  double current_max = 6.6;           // A, drive peak
  double monitor_noise_pp = 0.0472;   // A
  static constexpr int kJointAngleStableBits = 11;

  double encoder_step() const {
    return 2.0 * std::numbers::pi * pulley_radius / encoder_counts_per_rev;
  }
  void validate() const;
};

/// Linear force/current calibration, F = K_F * I.
struct ForceCalib {
  double K_F = 10.0;  // N/A
  void validate() const;
};

/// One semi-implicit Euler step of
///   (m + m_reflected) a = m g + F_ext - F_cable - c_visc v - F_coulomb sign(v).
/// F_ext is an additional drive along +x (the operator in bilateral runs).
/// Coulomb friction never reverses the velocity on its own: when it would,
/// the load sticks. Throws std::invalid_argument for F_cable < 0.
PlantState step_plant(const PlantState& s, double F_cable, const PlantParams& p, double dt,
                      double F_ext = 0.0);

/// Round-toward-negative-infinity encoder reading.
double read_encoder(double x, const QuantizerSpec& spec);

/// Quantize x to the nearest multiple of step.
double quantize_nearest(double x, double step);

struct AppliedCurrent {
  double I_applied;  // A
  double F_cable;    // N
};

/// Drive-side quantization and clamp to [0, current_max].
AppliedCurrent apply_current(double I_des, const QuantizerSpec& spec, const ForceCalib& calib);

/// Force reconstructed from the current monitor: the applied current plus
/// uniform noise of +-monitor_noise_pp/2, quantized to current_step and
/// limited to the largest step multiple within the drive range.
double monitor_force(double I_applied, const QuantizerSpec& spec, const ForceCalib& calib,
                     Rng& rng);

}  // namespace exhand
