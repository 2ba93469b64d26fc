#pragma once

#include <cstdint>
#include <optional>

#include "exhand/geometry.hpp"
#include "exhand/messages.hpp"

namespace exhand {

/// Master-side wall position driven by the fingertip-to-plane distance.
///
/// Far from the plane (d < d_lim) the wall tracks q - scale * d. At d >= d_lim
/// it freezes; it only starts tracking again once d drops below
/// d_lim - hysteresis.
struct WallTracker {
  std::optional<double> q_lim;  // m, cable coordinates
  bool frozen = false;
  double d_lim = -0.005;      // m, < 0
  double scale = 1.0;         // m of cable per m of task space
  double hysteresis = 0.002;  // m

  void validate() const;
};

WallTracker update_wall(const WallTracker& w, double d, double q);

/// One frame of the remote world simulator: FK of the received joints,
/// raycast along the palmar normal, hit expressed in {R}.
std::optional<PrecontactMsg> world_tick(const JointAngles& theta_latest, const Scene& scene,
                                        const FingerChain& chain, std::uint32_t seq,
                                        double t_send);

/// Plane from a message plus the local pad radius.
inline CollisionPlane to_collision_plane(const PrecontactMsg& m, const FingerChain& chain) {
  return {m.point, m.normal, chain.fingerpad_radius};
}

}  // namespace exhand
