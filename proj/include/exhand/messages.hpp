#pragma once

#include <cstdint>

#include "exhand/geometry.hpp"

namespace exhand {

/// Master -> world: latest glove-derived joint angles.
struct JointMsg {
  JointAngles theta{};
  std::uint32_t seq = 0;
  double t_send = 0.0;
  bool operator==(const JointMsg&) const = default;
};

/// World -> master: collision plane H in the hand frame {R}.
struct PrecontactMsg {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  std::uint32_t seq = 0;
  double t_send = 0.0;
  bool operator==(const PrecontactMsg& o) const {
    return point == o.point && normal == o.normal && seq == o.seq && t_send == o.t_send;
  }
};

}  // namespace exhand
