#include "exhand/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "exhand/error.hpp"

namespace exhand {

namespace {

constexpr double kUnitTol = 1e-9;

bool is_unit(const Vec3& n) { return std::abs(n.norm() - 1.0) < kUnitTol; }

// cos/sin that are exact at the quarter turns, so axis-aligned poses carry
// no 1e-17 residue
std::pair<double, double> cos_sin(double a) {
  const double quarter = a / (0.5 * std::numbers::pi);
  const double k = std::round(quarter);
  if (quarter == k && std::abs(k) <= 8.0) {
    switch (((static_cast<int>(k) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(a), std::sin(a)};
}

}  // namespace

void FingerChain::validate() const {
  for (double l : link_lengths) {
    if (!(l > 0.0)) throw ConfigError("finger.link lengths must be > 0");
  }
  if (!(fingerpad_radius > 0.0)) throw ConfigError("finger.pad_radius must be > 0");
}

void Scene::validate() const {
  for (const auto& obj : objects) {
    if (const auto* pl = std::get_if<Plane>(&obj)) {
      if (!is_unit(pl->normal)) throw ConfigError("scene plane normal must be unit length");
    } else if (const auto* sp = std::get_if<Sphere>(&obj)) {
      if (!(sp->radius > 0.0)) throw ConfigError("scene sphere radius must be > 0");
    }
  }
}

Vec3 FingertipPose::ray() const { return distal.linear().col(1); }

FingertipPose fk_fingertip(const JointAngles& theta, const FingerChain& chain) {
  for (double a : theta) {
    if (!(std::abs(a) <= std::numbers::pi)) {
      throw std::invalid_argument("fk_fingertip: joint angle outside [-pi, pi]");
    }
  }
  double heading = 0.0;
  double px = 0.0;
  double py = 0.0;
  for (int i = 0; i < 3; ++i) {
    heading += theta[i];
    const auto [c, sn] = cos_sin(heading);
    px += chain.link_lengths[i] * c;
    py += chain.link_lengths[i] * sn;
  }
  Pose local = planar_pose(px, py, 0.0, heading);
  FingertipPose out;
  out.distal = chain.base * local;
  out.tip = out.distal.translation();
  return out;
}

std::optional<JointAngles> ik_fingertip(const Vec3& tip, double heading, bool elbow_up,
                                        const FingerChain& chain) {
  const Vec3 local = chain.base.inverse() * tip;
  const auto& L = chain.link_lengths;
  const double wx = local.x() - L[2] * std::cos(heading);
  const double wy = local.y() - L[2] * std::sin(heading);
  const double r2 = wx * wx + wy * wy;
  const double c2 = (r2 - L[0] * L[0] - L[1] * L[1]) / (2.0 * L[0] * L[1]);
  if (c2 < -1.0 || c2 > 1.0) return std::nullopt;
  const double s2 = (elbow_up ? 1.0 : -1.0) * std::sqrt(1.0 - c2 * c2);
  const double t2 = std::atan2(s2, c2);
  const double t1 = std::atan2(wy, wx) - std::atan2(L[1] * s2, L[0] + L[1] * c2);
  auto wrap = [](double a) { return std::remainder(a, 2.0 * std::numbers::pi); };
  JointAngles th{wrap(t1), wrap(t2), 0.0};
  th[2] = wrap(heading - th[0] - th[1]);
  return th;
}

std::optional<RayHit> raycast(const Vec3& origin, const Vec3& dir, const Scene& scene) {
  std::optional<RayHit> best;
  auto consider = [&](const RayHit& h) {
    if (!best || h.distance < best->distance) best = h;
  };
  for (const auto& obj : scene.objects) {
    if (const auto* pl = std::get_if<Plane>(&obj)) {
      const double denom = pl->normal.dot(dir);
      if (std::abs(denom) < std::numeric_limits<double>::epsilon()) continue;
      const double s = pl->normal.dot(pl->point - origin) / denom;
      if (s > 0.0) consider({origin + s * dir, pl->normal, s});
    } else if (const auto* sp = std::get_if<Sphere>(&obj)) {
      const Vec3 oc = origin - sp->center;
      const double half_b = oc.dot(dir);
      const double c = oc.squaredNorm() - sp->radius * sp->radius;
      const double disc = half_b * half_b - c;
      if (disc < 0.0) continue;
      const double root = std::sqrt(disc);
      double s = -half_b - root;
      if (!(s > 0.0)) s = -half_b + root;
      if (!(s > 0.0)) continue;
      const Vec3 hit = origin + s * dir;
      consider({hit, (hit - sp->center) / sp->radius, s});
    }
  }
  return best;
}

double signed_distance(const Vec3& tip, const CollisionPlane& plane) {
  return (plane.point - tip).dot(plane.normal) - plane.pad_radius;
}

Point3 to_hand_frame(const Point3& p, const Pose& hand_in_world) {
  return {hand_in_world.inverse() * p.v};
}

Direction3 to_hand_frame(const Direction3& d, const Pose& hand_in_world) {
  return {hand_in_world.linear().transpose() * d.v};
}

Point3 to_world_frame(const Point3& p, const Pose& hand_in_world) { return {hand_in_world * p.v}; }

Direction3 to_world_frame(const Direction3& d, const Pose& hand_in_world) {
  return {hand_in_world.linear() * d.v};
}

Pose planar_pose(double x, double y, double z, double yaw) {
  Pose p = Pose::Identity();
  const auto [c, s] = cos_sin(yaw);
  p.linear() << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  p.translation() = Vec3(x, y, z);
  return p;
}

}  // namespace exhand
