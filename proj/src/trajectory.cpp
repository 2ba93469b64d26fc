#include "exhand/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exhand/error.hpp"

namespace exhand {

void TrajectoryProfile::validate() const {
  if (!(approach_speed > 0.0)) throw ConfigError("trajectory.approach_speed must be > 0");
  if (!(approach_distance > 0.0)) throw ConfigError("trajectory.approach_distance must be > 0");
  if (!(hold_start >= 0.0)) throw ConfigError("trajectory.hold_start must be >= 0");
  if (!(dwell >= 0.0)) throw ConfigError("trajectory.dwell must be >= 0");
  if (retract && !(retract_speed > 0.0)) throw ConfigError("trajectory.retract_speed must be > 0");
}

PathSample path_arc(const TrajectoryProfile& p, double t) {
  const double t_move = p.approach_time();
  double tau = t - p.hold_start;
  if (tau <= 0.0) return {0.0, 0.0};
  if (tau < t_move) return {p.approach_speed * tau, p.approach_speed};
  tau -= t_move;
  if (tau < p.dwell || !p.retract) return {p.approach_distance, 0.0};
  tau -= p.dwell;
  if (tau < p.retract_time()) return {p.approach_distance - p.retract_speed * tau, -p.retract_speed};
  return {0.0, 0.0};
}

FingerPath::FingerPath(const TrajectoryProfile& profile, const FingerChain& chain) : chain_(chain) {
  const FingertipPose fp = fk_fingertip(profile.start_pose, chain);
  start_tip_ = fp.tip;
  dir_ = fp.ray();
  // heading in the chain plane, fixed for the whole path
  heading_ = profile.start_pose[0] + profile.start_pose[1] + profile.start_pose[2];
  elbow_up_ = profile.start_pose[1] >= 0.0;
}

JointAngles FingerPath::pose_at(double arc) const {
  const auto th = ik_fingertip(start_tip_ + arc * dir_, heading_, elbow_up_, chain_);
  if (!th) throw std::domain_error("finger path leaves the chain workspace");
  return *th;
}

JointAngles finger_trajectory(const TrajectoryProfile& profile, const FingerChain& chain, double t) {
  if (t < 0.0) throw std::invalid_argument("finger_trajectory: t must be >= 0");
  if (path_arc(profile, t).arc == 0.0) return profile.start_pose;
  return FingerPath(profile, chain).pose_at(path_arc(profile, t).arc);
}

JointAngles default_start_pose(const FingerChain& chain) {
  // distal link pointing along -y of the chain base, palmar normal along +x
  const double heading = -0.5 * std::numbers::pi;
  const auto& L = chain.link_lengths;
  const Vec3 tip_local(-0.035, -0.03 - L[2], 0.0);
  const auto th = ik_fingertip(chain.base * tip_local, heading, true, chain);
  if (!th) throw ConfigError("default start pose is out of reach for this chain");
  return *th;
}

}  // namespace exhand
