#include "exhand/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "exhand/error.hpp"

namespace exhand {

SimClock::SimClock(double plant_substep) {
  if (!(plant_substep > 0.0)) throw ConfigError("hardware.plant_substep must be > 0");
  const double rate = 1.0 / plant_substep;
  base_rate_ = std::llround(rate);
  if (base_rate_ <= 0 || std::abs(rate - static_cast<double>(base_rate_)) > 1e-6 * rate) {
    throw ConfigError("hardware.plant_substep must divide one second into a whole number of steps");
  }
}

std::int64_t SimClock::tick_step(std::int64_t n, double rate_hz) const {
  const double exact = static_cast<double>(n) * static_cast<double>(base_rate_) / rate_hz;
  return static_cast<std::int64_t>(std::ceil(exact - 1e-9));
}

std::int64_t SimClock::step_at_or_after(double t) const {
  return static_cast<std::int64_t>(std::ceil(t * static_cast<double>(base_rate_) - 1e-9));
}

void SimClock::check_period(double rate_hz, const char* what) const {
  if (!(rate_hz > 0.0)) throw ConfigError(std::string(what) + " must be > 0");
  if (substep() > 1.0 / rate_hz / 10.0 * (1.0 + 1e-9)) {
    throw ConfigError(std::string(what) + ": plant substep must be <= period / 10");
  }
}

void DropConfig::validate() const {
  hw.plant.validate();
  hw.quantizer.validate();
  hw.calib.validate();
  wall.validate();
  if (!(h > 0.0)) throw ConfigError("drop.h must be > 0");
  if (!(f_loop >= 90.0 && f_loop <= 2000.0)) throw ConfigError("drop.f_loop must be in [90, 2000] Hz");
  if (n_falls < 1) throw ConfigError("drop.n_falls must be >= 1");
  if (!(fall_duration > 0.0)) throw ConfigError("drop.fall_duration must be > 0");
  SimClock(hw.plant_substep).check_period(f_loop, "drop.f_loop");
  // at zero penetration only the pullback force is commanded
  if (wall.F_offset > hw.calib.K_F * hw.quantizer.current_max) {
    throw ConfigError("wall.F_offset exceeds the actuator limit K_F * current_max");
  }
}

void OperatorModel::validate() const {
  if (!(k_h >= 0.0)) throw ConfigError("operator.k_h must be >= 0");
  if (!(b_h >= 0.0)) throw ConfigError("operator.b_h must be >= 0");
  if (!(F_max > 0.0)) throw ConfigError("operator.F_max must be > 0");
}

double OperatorModel::force(double x, double v, double x_intent, double v_intent) const {
  return std::clamp(k_h * (x_intent - x) + b_h * (v_intent - v), -F_max, F_max);
}

void BilateralConfig::validate() const {
  hw.plant.validate();
  hw.quantizer.validate();
  hw.calib.validate();
  wall.validate();
  tracker.validate();
  channel.validate();
  trajectory.validate();
  op.validate();
  chain.validate();
  scene.validate();
  if (!(worldsim_rate_min >= 100.0 && worldsim_rate_max <= 400.0 &&
        worldsim_rate_min <= worldsim_rate_max)) {
    throw ConfigError("bilateral.worldsim_rate_min..worldsim_rate_max must lie within [100, 400] Hz with min <= max");
  }
  if (!(duration >= 0.0)) throw ConfigError("bilateral.duration must be >= 0");
  const SimClock clock(hw.plant_substep);
  clock.check_period(f_loop, "bilateral.f_loop");
  clock.check_period(worldsim_rate_max, "worldsim rate");
}

double BilateralConfig::resolved_duration() const {
  return duration > 0.0 ? duration : trajectory.end_time() + 0.2;
}

Plane plane_ahead_of_start(const BilateralConfig& cfg, double ahead) {
  const FingertipPose fp = fk_fingertip(cfg.trajectory.start_pose, cfg.chain);
  const Vec3 tip = to_world_frame(Point3{fp.tip}, cfg.scene.hand_in_world).v;
  const Vec3 ray = to_world_frame(Direction3{fp.ray()}, cfg.scene.hand_in_world).v;
  return Plane{tip + ahead * ray, -ray};
}

BilateralConfig default_bilateral_config(double ahead) {
  BilateralConfig cfg;
  cfg.hw.plant.g = 0.0;
  cfg.trajectory.start_pose = default_start_pose(cfg.chain);
  // the operator impedance lags the intent a little; this lands at 0.87 m/s on the wall
  cfg.trajectory.approach_speed = 0.88;
  cfg.scene.hand_in_world = planar_pose(0.20, 0.10, 0.05, 0.5);
  cfg.scene.objects.push_back(plane_ahead_of_start(cfg, ahead));
  return cfg;
}

namespace {

/// Controller tick shared by both experiments: encoder, velocity, wall law,
/// force-to-current, drive, monitor.
struct MasterLoop {
  const Hardware& hw;
  double T;
  ControllerState ctrl;
  Rng monitor_rng;
  double F_cable = 0.0;

  MasterLoop(const Hardware& h, double f_loop, std::uint64_t seed)
      : hw(h), T(1.0 / f_loop), monitor_rng(seed, Rng::Stream::kMonitorNoise) {}

  LogRecord tick(double t, double x, const WallParams& wall) {
    LogRecord r;
    r.t = t;
    r.q = read_encoder(x, hw.quantizer);
    r.qdot = estimate_velocity(r.q, ctrl, T, hw.velocity_cutoff_hz);
    const WallOutput out = wall_tick(r.q, r.qdot, wall);
    r.c = out.contact;
    r.F_des = out.F_set;
    r.I_des = force_to_current(out.F_set, hw.calib);
    const AppliedCurrent applied = apply_current(r.I_des, hw.quantizer, hw.calib);
    F_cable = applied.F_cable;
    r.F_mon = monitor_force(applied.I_applied, hw.quantizer, hw.calib, monitor_rng);
    return r;
  }
};

}  // namespace

RunLog run_drop_experiment(const DropConfig& cfg) {
  cfg.validate();
  const SimClock clock(cfg.hw.plant_substep);
  const double dt = clock.substep();
  WallParams wall = cfg.wall;
  wall.q_lim = cfg.h;

  RunLog log;
  log.kind = LogKind::kDrop;
  const std::int64_t cycle_steps = clock.step_at_or_after(cfg.fall_duration);
  const std::int64_t total_steps = cycle_steps * cfg.n_falls;
  log.records.reserve(static_cast<std::size_t>(
      static_cast<double>(total_steps) * dt * cfg.f_loop + 2.0));

  MasterLoop master(cfg.hw, cfg.f_loop, cfg.seed);
  Rng release_rng(cfg.seed, Rng::Stream::kRelease);
  const std::int64_t max_hold = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(cfg.release_jitter / dt)));
  auto draw_hold = [&] {
    return cfg.release_jitter > 0.0
               ? static_cast<std::int64_t>(release_rng.next_u64() % static_cast<std::uint64_t>(max_hold))
               : 0;
  };
  PlantState plant;
  std::int64_t release_step = draw_hold();
  std::int64_t tick = 0;
  std::int64_t next_tick_step = clock.tick_step(tick, cfg.f_loop);

  for (std::int64_t i = 0; i <= total_steps; ++i) {
    if (i > 0) {
      if (i % cycle_steps == 0 && i < total_steps) {
        // next release: load back at rest, fresh velocity memory, drive idle
        plant = PlantState{};
        master.ctrl = ControllerState{};
        master.F_cable = 0.0;
        release_step = i + draw_hold();
      } else if (i > release_step) {
        plant = step_plant(plant, master.F_cable, cfg.hw.plant, dt);
      }
    }
    if (i == next_tick_step) {
      const double t = static_cast<double>(tick) / cfg.f_loop;
      log.records.push_back(master.tick(t, plant.x, wall));
      ++tick;
      next_tick_step = clock.tick_step(tick, cfg.f_loop);
    }
  }
  return log;
}

RunLog run_bilateral_experiment(const BilateralConfig& cfg) {
  cfg.validate();
  const SimClock clock(cfg.hw.plant_substep);
  const double dt = clock.substep();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  PlantParams finger = cfg.hw.plant;
  finger.g = 0.0;  // the operator drives the finger, not gravity
  const FingerPath path(cfg.trajectory, cfg.chain);
  const double scale = cfg.tracker.scale;

  ChannelConfig down_cfg = cfg.channel;
  down_cfg.seed = cfg.seed ^ cfg.channel.seed;
  Channel<JointMsg> downlink(down_cfg, Rng::Stream::kDownlink);
  Channel<PrecontactMsg> uplink(down_cfg, Rng::Stream::kUplink);
  Rng world_rate_rng(cfg.seed, Rng::Stream::kWorldRate);

  RunLog log;
  log.kind = LogKind::kBilateral;
  const std::int64_t total_steps = clock.step_at_or_after(cfg.resolved_duration());
  log.records.reserve(static_cast<std::size_t>(cfg.resolved_duration() * cfg.f_loop + 2.0));

  MasterLoop master(cfg.hw, cfg.f_loop, cfg.seed);
  WallTracker tracker = cfg.tracker;
  WallParams wall = cfg.wall;
  std::optional<PrecontactMsg> plane;
  std::uint32_t joint_seq = 0;

  std::optional<JointAngles> world_theta;
  std::uint32_t world_seq = 0;
  double next_world_time = 0.0;

  PlantState plant;
  std::int64_t tick = 0;
  std::int64_t next_tick_step = clock.tick_step(tick, cfg.f_loop);

  for (std::int64_t i = 0; i <= total_steps; ++i) {
    const double t = clock.time(i);
    if (i > 0) {
      const double t_prev = clock.time(i - 1);
      const PathSample intent = path_arc(cfg.trajectory, t_prev);
      const double F_op = cfg.op.force(plant.x, plant.v, scale * intent.arc, scale * intent.speed);
      plant = step_plant(plant, master.F_cable, finger, dt, F_op);
    }

    if (t >= next_world_time) {
      if (auto m = downlink.receive_latest(t)) world_theta = m->theta;
      if (world_theta) {
        if (auto msg = world_tick(*world_theta, cfg.scene, cfg.chain, world_seq + 1, t)) {
          ++world_seq;
          uplink.send(*msg, t);
        }
      }
      const double rate = world_rate_rng.uniform(cfg.worldsim_rate_min, cfg.worldsim_rate_max);
      next_world_time = clock.time(clock.step_at_or_after(next_world_time + 1.0 / rate));
    }

    if (i == next_tick_step) {
      if (auto m = uplink.receive_latest(t)) plane = *m;
      const JointAngles theta = path.pose_at(plant.x / scale);
      double d = nan;
      if (plane) {
        const Vec3 tip = fk_fingertip(theta, cfg.chain).tip;
        d = signed_distance(tip, to_collision_plane(*plane, cfg.chain));
        tracker = update_wall(tracker, d, read_encoder(plant.x, cfg.hw.quantizer));
      }
      wall.q_lim = tracker.q_lim.value_or(std::numeric_limits<double>::infinity());

      LogRecord r = master.tick(static_cast<double>(tick) / cfg.f_loop, plant.x, wall);
      r.d = d;
      r.q_lim = tracker.q_lim.value_or(nan);
      log.records.push_back(r);

      downlink.send(JointMsg{theta, ++joint_seq, t}, t);
      ++tick;
      next_tick_step = clock.tick_step(tick, cfg.f_loop);
    }
  }
  return log;
}

}  // namespace exhand
