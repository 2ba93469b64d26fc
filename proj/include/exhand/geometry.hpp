#pragma once

#include <Eigen/Geometry>
#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace exhand {

using Vec3 = Eigen::Vector3d;
using Pose = Eigen::Isometry3d;
using JointAngles = std::array<double, 3>;

/// A location; transforms with rotation and translation.
struct Point3 {
  Vec3 v;
};
/// A free vector; transforms with rotation only.
struct Direction3 {
  Vec3 v;
};

/// Planar three-link finger in the hand frame {R}. Joints rotate about the
/// base z axis; the zero pose points the chain along +x.
struct FingerChain {
  std::array<double, 3> link_lengths{0.04, 0.03, 0.02};  // m
  Pose base = Pose::Identity();                           // chain base in {R}
  double fingerpad_radius = 0.008;                        // m
  void validate() const;
};

struct Plane {
  Vec3 point;
  Vec3 normal;  // unit, outward
};

struct Sphere {
  Vec3 center;
  double radius;
};

using Primitive = std::variant<Plane, Sphere>;

struct Scene {
  std::vector<Primitive> objects;
  Pose hand_in_world = Pose::Identity();  // pose of {R} in the world
  void validate() const;
};

/// Collision plane H expressed in {R}.
struct CollisionPlane {
  Vec3 point;   // P_C^R
  Vec3 normal;  // n_C^R
  double pad_radius;
};

struct FingertipPose {
  Vec3 tip;          // P_F^R
  Pose distal;       // fingertip frame in {R}; x along the distal link
  Vec3 ray() const;  // palmar normal, the y axis of the distal frame
};

/// Serial-chain forward kinematics. Angles must lie within [-pi, pi].
FingertipPose fk_fingertip(const JointAngles& theta, const FingerChain& chain);

/// Joint angles that put the fingertip at `tip` (in {R}) with distal link
/// heading `heading` (rad, in the chain plane). `elbow_up` selects the sign
/// of the middle joint. Empty when out of reach.
std::optional<JointAngles> ik_fingertip(const Vec3& tip, double heading, bool elbow_up,
                                        const FingerChain& chain);

struct RayHit {
  Vec3 point;
  Vec3 normal;
  double distance;
};

/// Nearest hit with positive ray parameter; `dir` must be unit length.
std::optional<RayHit> raycast(const Vec3& origin, const Vec3& dir, const Scene& scene);

/// Eq. (P_C - P_F) . n - t: negative while approaching from the normal side.
double signed_distance(const Vec3& tip, const CollisionPlane& plane);

Point3 to_hand_frame(const Point3& p, const Pose& hand_in_world);
Direction3 to_hand_frame(const Direction3& d, const Pose& hand_in_world);
Point3 to_world_frame(const Point3& p, const Pose& hand_in_world);
Direction3 to_world_frame(const Direction3& d, const Pose& hand_in_world);

/// Rigid transform from translation and a rotation about z.
Pose planar_pose(double x, double y, double z, double yaw);

}  // namespace exhand
