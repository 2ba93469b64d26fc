#include "exhand/codec.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "exhand/error.hpp"

namespace exhand::codec {

namespace {

class Writer {
 public:
  explicit Writer(std::size_t n) { buf_.reserve(n); }
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}
  std::uint8_t u8() { return b_[pos_++]; }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b_[pos_++]) << (8 * i);
    return std::bit_cast<double>(v);
  }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

void header(Writer& w, std::uint8_t type, std::uint32_t seq, double t_send) {
  w.u8(kMagic);
  w.u8(type);
  w.u32(seq);
  w.f64(t_send);
}

}  // namespace

std::vector<std::uint8_t> encode(const JointMsg& m) {
  Writer w(kJointSize);
  header(w, kTypeJoint, m.seq, m.t_send);
  for (double a : m.theta) w.f64(a);
  return w.take();
}

std::vector<std::uint8_t> encode(const PrecontactMsg& m) {
  Writer w(kPlaneSize);
  header(w, kTypePlane, m.seq, m.t_send);
  for (int i = 0; i < 3; ++i) w.f64(m.point[i]);
  for (int i = 0; i < 3; ++i) w.f64(m.normal[i]);
  return w.take();
}

Message decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw CodecError("datagram shorter than 2 bytes");
  if (bytes[0] != kMagic) throw CodecError("bad magic byte");
  const std::uint8_t type = bytes[1];
  const std::size_t expected = type == kTypeJoint   ? kJointSize
                               : type == kTypePlane ? kPlaneSize
                                                    : 0;
  if (expected == 0) throw CodecError("unknown message type " + std::to_string(type));
  if (bytes.size() != expected) {
    throw CodecError("length " + std::to_string(bytes.size()) + ", expected " +
                     std::to_string(expected));
  }
  Reader r(bytes);
  r.u8();
  r.u8();
  const std::uint32_t seq = r.u32();
  const double t_send = r.f64();
  if (type == kTypeJoint) {
    JointMsg m;
    m.seq = seq;
    m.t_send = t_send;
    for (double& a : m.theta) a = r.f64();
    return m;
  }
  PrecontactMsg m;
  m.seq = seq;
  m.t_send = t_send;
  for (int i = 0; i < 3; ++i) m.point[i] = r.f64();
  for (int i = 0; i < 3; ++i) m.normal[i] = r.f64();
  if (!(std::abs(m.normal.norm() - 1.0) <= kNormalTolerance)) {
    throw CodecError("plane normal is not unit length");
  }
  return m;
}

}  // namespace exhand::codec
