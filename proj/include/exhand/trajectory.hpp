#pragma once

#include "exhand/geometry.hpp"

namespace exhand {

/// Scripted operator motion: hold at the start pose, move the fingertip in a
/// straight line along the start pose's palmar normal at constant speed,
/// dwell, optionally retract along the same line. The distal link heading is
/// held fixed, so the raycast direction does not change along the path.
struct TrajectoryProfile {
  double approach_speed = 0.87;     // m/s, fingertip task space
  JointAngles start_pose{};         // rad
  double approach_distance = 0.07;  // m
  double hold_start = 0.3;          // s
  double dwell = 1.8;               // s
  bool retract = true;
  double retract_speed = 0.005;     // m/s; slow, so the contact force unloads gradually

  void validate() const;
  double approach_time() const { return approach_distance / approach_speed; }
  double retract_time() const { return retract ? approach_distance / retract_speed : 0.0; }
  double retract_start() const { return hold_start + approach_time() + dwell; }
  /// End of the last moving phase.
  double end_time() const { return retract_start() + retract_time(); }
};

/// Distance travelled along the path at time t, and its rate.
struct PathSample {
  double arc;    // m
  double speed;  // m/s, signed
};
PathSample path_arc(const TrajectoryProfile& profile, double t);

/// The straight fingertip line defined by a profile's start pose.
class FingerPath {
 public:
  FingerPath(const TrajectoryProfile& profile, const FingerChain& chain);

  /// Joint angles with the fingertip `arc` metres along the line. Throws
  /// std::domain_error when the point leaves the chain's reach.
  JointAngles pose_at(double arc) const;
  const Vec3& start_tip() const { return start_tip_; }
  const Vec3& direction() const { return dir_; }

 private:
  FingerChain chain_;
  Vec3 start_tip_;
  Vec3 dir_;
  double heading_;
  bool elbow_up_;
};

/// Operator intent at time t as joint angles.
JointAngles finger_trajectory(const TrajectoryProfile& profile, const FingerChain& chain, double t);

/// Start pose whose path runs comfortably inside the default chain's
/// workspace for ~9 cm along +x of {R}.
JointAngles default_start_pose(const FingerChain& chain);

}  // namespace exhand
