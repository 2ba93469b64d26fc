#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "exhand/messages.hpp"

namespace exhand::codec {

// Little-endian layout:
//   u8 magic 0x45 | u8 type | u32 seq | f64 t_send | f64 payload...
// Joint payload: theta[0..2]. Plane payload: P_C^R xyz, then n_C^R xyz.
inline constexpr std::uint8_t kMagic = 0x45;
inline constexpr std::uint8_t kTypeJoint = 0x01;
inline constexpr std::uint8_t kTypePlane = 0x02;
inline constexpr std::size_t kHeaderSize = 1 + 1 + 4 + 8;
inline constexpr std::size_t kJointSize = kHeaderSize + 3 * 8;
inline constexpr std::size_t kPlaneSize = kHeaderSize + 6 * 8;
inline constexpr double kNormalTolerance = 1e-6;

using Message = std::variant<JointMsg, PrecontactMsg>;

std::vector<std::uint8_t> encode(const JointMsg& m);
std::vector<std::uint8_t> encode(const PrecontactMsg& m);

/// Throws CodecError on wrong magic, unknown type, wrong length or a
/// plane normal more than 1e-6 away from unit length.
Message decode(std::span<const std::uint8_t> bytes);

}  // namespace exhand::codec
