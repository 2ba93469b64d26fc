#include "exhand/precontact.hpp"

#include "exhand/error.hpp"

namespace exhand {

void WallTracker::validate() const {
  if (!(d_lim < 0.0)) throw ConfigError("tracker.d_lim must be < 0 (the threshold lies before the plane)");
  if (!(scale > 0.0)) throw ConfigError("tracker.scale must be > 0");
  if (!(hysteresis >= 0.0)) throw ConfigError("tracker.hysteresis must be >= 0");
}

WallTracker update_wall(const WallTracker& w, double d, double q) {
  WallTracker out = w;
  const double tracked = q - w.scale * d;
  if (w.frozen) {
    if (d < w.d_lim - w.hysteresis) {
      out.frozen = false;
      out.q_lim = tracked;
    }
    return out;
  }
  if (d < w.d_lim) {
    out.q_lim = tracked;
  } else {
    if (!out.q_lim) out.q_lim = tracked;
    out.frozen = true;
  }
  return out;
}

std::optional<PrecontactMsg> world_tick(const JointAngles& theta_latest, const Scene& scene,
                                        const FingerChain& chain, std::uint32_t seq,
                                        double t_send) {
  const FingertipPose fp = fk_fingertip(theta_latest, chain);
  const Point3 origin = to_world_frame(Point3{fp.tip}, scene.hand_in_world);
  const Direction3 dir = to_world_frame(Direction3{fp.ray()}, scene.hand_in_world);
  const auto hit = raycast(origin.v, dir.v, scene);
  if (!hit) return std::nullopt;
  PrecontactMsg m;
  m.point = to_hand_frame(Point3{hit->point}, scene.hand_in_world).v;
  m.normal = to_hand_frame(Direction3{hit->normal}, scene.hand_in_world).v;
  m.seq = seq;
  m.t_send = t_send;
  return m;
}

}  // namespace exhand
