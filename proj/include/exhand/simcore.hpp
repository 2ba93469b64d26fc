#pragma once

#include <cstdint>

#include "exhand/channel.hpp"
#include "exhand/geometry.hpp"
#include "exhand/plant.hpp"
#include "exhand/precontact.hpp"
#include "exhand/runlog.hpp"
#include "exhand/trajectory.hpp"
#include "exhand/wallctl.hpp"

namespace exhand {

/// Fixed-step co-simulation clock. Time advances in whole plant substeps;
/// a periodic process ticks on the first substep at or after each multiple
/// of its period.
///
/// Order inside one substep: plant integration, channel deliveries, world
/// tick (if due), controller tick (if due).
class SimClock {
 public:
  explicit SimClock(double plant_substep);

  double substep() const { return 1.0 / static_cast<double>(base_rate_); }
  std::int64_t base_rate() const { return base_rate_; }
  double time(std::int64_t step) const {
    return static_cast<double>(step) / static_cast<double>(base_rate_);
  }
  /// Substep index of tick n of a process running at rate_hz.
  std::int64_t tick_step(std::int64_t n, double rate_hz) const;
  /// First substep index at or after time t.
  std::int64_t step_at_or_after(double t) const;
  /// Throw unless substep <= period / 10.
  void check_period(double rate_hz, const char* what) const;

 private:
  std::int64_t base_rate_;
};

/// Numerical and I/O quantities shared by both experiments.
struct Hardware {
  PlantParams plant;
  QuantizerSpec quantizer;
  ForceCalib calib;
  double velocity_cutoff_hz = 0.0;  // 0 disables the velocity low-pass
  double plant_substep = 50e-6;     // s
};

/// Mass-drop stiffness identification: the load is released from rest at
/// x = 0 and caught by the wall at q_lim = h.
struct DropConfig {
  Hardware hw;
  double h = 0.07;        // m
  double f_loop = 2000;   // Hz
  WallParams wall{20000.0, 60.0, 0.0, 0.0};
  int n_falls = 10;
  double fall_duration = 2.0;  // s per release, including the contact phase
  /// Each release is held for a seeded random time in [0, release_jitter)
  /// so the falls sample the impact at different controller phases.
  double release_jitter = 0.0005;  // s
  std::uint64_t seed = 1;

  void validate() const;
};

/// Operator impedance that drags the finger toward the scripted intent:
///   F = clamp(k_h (x_intent - x) + b_h (v_intent - v), -F_max, F_max).
struct OperatorModel {
  double k_h = 3000.0;  // N/m
  double b_h = 40.0;    // Ns/m
  double F_max = 30.0;  // N
  void validate() const;
  double force(double x, double v, double x_intent, double v_intent) const;
};

struct BilateralConfig {
  Hardware hw;
  double f_loop = 2000;  // Hz
  WallParams wall{20000.0, 60.0, 0.0, 0.0};
  WallTracker tracker;
  ChannelConfig channel;
  double worldsim_rate_min = 100.0;  // Hz
  double worldsim_rate_max = 400.0;  // Hz
  TrajectoryProfile trajectory;
  OperatorModel op;
  FingerChain chain;
  Scene scene;
  double duration = 0.0;  // s; 0 runs to the end of the trajectory plus 0.2 s
  std::uint64_t seed = 1;

  void validate() const;
  double resolved_duration() const;
};

/// Default bilateral setup: a plane `ahead` metres in front of the start
/// fingertip along the ray, facing the finger, with a non-trivial hand pose
/// in the world.
BilateralConfig default_bilateral_config(double ahead = 0.05);

/// Plane `ahead` metres along the start pose's ray, in world coordinates.
Plane plane_ahead_of_start(const BilateralConfig& cfg, double ahead);

RunLog run_drop_experiment(const DropConfig& cfg);
RunLog run_bilateral_experiment(const BilateralConfig& cfg);

}  // namespace exhand
