#include "exhand/datagram.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <system_error>
#include <utility>

namespace exhand {

namespace {

sockaddr_in loopback(std::uint16_t port) {
  sockaddr_in a{};
  a.sin_family = AF_INET;
  a.sin_port = htons(port);
  a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  return a;
}

[[noreturn]] void fail(const char* what) {
  throw std::system_error(errno, std::generic_category(), what);
}

}  // namespace

DatagramEndpoint::DatagramEndpoint(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) fail("socket");
  const int flags = ::fcntl(fd_, F_GETFL, 0);
  if (flags < 0 || ::fcntl(fd_, F_SETFL, flags | O_NONBLOCK) < 0) {
    ::close(fd_);
    fail("fcntl");
  }
  sockaddr_in addr = loopback(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    ::close(fd_);
    fail("bind");
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

DatagramEndpoint::~DatagramEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

DatagramEndpoint::DatagramEndpoint(DatagramEndpoint&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)),
      port_(other.port_),
      joints_(other.joints_),
      planes_(other.planes_),
      rejected_(other.rejected_) {}

DatagramEndpoint& DatagramEndpoint::operator=(DatagramEndpoint&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
    port_ = other.port_;
    joints_ = other.joints_;
    planes_ = other.planes_;
    rejected_ = other.rejected_;
  }
  return *this;
}

void DatagramEndpoint::send_to(std::uint16_t port, std::span<const std::uint8_t> bytes) const {
  const sockaddr_in dst = loopback(port);
  const auto n = ::sendto(fd_, bytes.data(), bytes.size(), 0,
                          reinterpret_cast<const sockaddr*>(&dst), sizeof dst);
  if (n < 0) fail("sendto");
}

std::size_t DatagramEndpoint::poll() {
  std::array<std::uint8_t, 256> buf{};
  std::size_t count = 0;
  for (;;) {
    const auto n = ::recv(fd_, buf.data(), buf.size(), 0);
    if (n < 0) {
      if (errno == EAGAIN || errno == EWOULDBLOCK) break;
      fail("recv");
    }
    ++count;
    try {
      const auto msg = codec::decode(std::span(buf.data(), static_cast<std::size_t>(n)));
      if (const auto* j = std::get_if<JointMsg>(&msg)) {
        joints_.offer(*j);
      } else {
        planes_.offer(std::get<PrecontactMsg>(msg));
      }
    } catch (const CodecError&) {
      ++rejected_;
    }
  }
  return count;
}

}  // namespace exhand
