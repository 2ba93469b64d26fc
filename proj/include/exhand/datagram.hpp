#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "exhand/channel.hpp"
#include "exhand/codec.hpp"

namespace exhand {

/// Non-blocking UDP endpoint on 127.0.0.1 for two-process runs. Incoming
/// datagrams are decoded and filtered with the same latest-by-seq rule as
/// the simulated channel; undecodable datagrams are counted and dropped.
class DatagramEndpoint {
 public:
  /// Binds to the given port; 0 picks an ephemeral one. Throws
  /// std::system_error when the socket cannot be created or bound.
  explicit DatagramEndpoint(std::uint16_t port = 0);
  ~DatagramEndpoint();
  DatagramEndpoint(DatagramEndpoint&& other) noexcept;
  DatagramEndpoint& operator=(DatagramEndpoint&& other) noexcept;
  DatagramEndpoint(const DatagramEndpoint&) = delete;
  DatagramEndpoint& operator=(const DatagramEndpoint&) = delete;

  std::uint16_t port() const { return port_; }

  void send_to(std::uint16_t port, std::span<const std::uint8_t> bytes) const;
  void send_to(std::uint16_t port, const JointMsg& m) const { send_to(port, codec::encode(m)); }
  void send_to(std::uint16_t port, const PrecontactMsg& m) const { send_to(port, codec::encode(m)); }

  /// Drain the socket without blocking. Returns datagrams read.
  std::size_t poll();

  std::optional<JointMsg> latest_joint() { return joints_.take(); }
  std::optional<PrecontactMsg> latest_plane() { return planes_.take(); }
  std::size_t rejected() const { return rejected_; }

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
  LatestBySeq<JointMsg> joints_;
  LatestBySeq<PrecontactMsg> planes_;
  std::size_t rejected_ = 0;
};

}  // namespace exhand
