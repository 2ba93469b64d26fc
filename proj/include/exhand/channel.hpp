#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "exhand/error.hpp"
#include "exhand/messages.hpp"
#include "exhand/rng.hpp"

namespace exhand {

struct ChannelConfig {
  double base_delay = 0.001;  // s
  double jitter_max = 0.005;  // s, uniform on [0, jitter_max]
  double drop_prob = 0.0;
  bool allow_reorder = true;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(base_delay >= 0.0)) throw ConfigError("channel.base_delay must be >= 0");
    if (!(jitter_max >= 0.0)) throw ConfigError("channel.jitter_max must be >= 0");
    if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) throw ConfigError("channel.drop_prob must be in [0, 1]");
  }
};

template <typename Payload>
struct InFlightMsg {
  Payload payload;
  double t_send;
  double t_deliver;
  std::uint32_t seq;
};

/// Keeps only the freshest message by sequence number. Shared by the
/// simulated link and the datagram endpoint so both tolerate loss and
/// reordering identically.
template <typename Payload>
class LatestBySeq {
 public:
  /// Offer a delivered message; returns true if it is newer than anything seen.
  bool offer(const Payload& p) {
    if (have_ && p.seq <= best_.seq) return false;
    best_ = p;
    have_ = true;
    fresh_ = true;
    return true;
  }
  /// The newest message not yet taken.
  std::optional<Payload> take() {
    if (!fresh_) return std::nullopt;
    fresh_ = false;
    return best_;
  }

 private:
  Payload best_{};
  bool have_ = false;
  bool fresh_ = false;
};

/// One direction of the delayed, jittery link.
template <typename Payload>
class Channel {
 public:
  explicit Channel(const ChannelConfig& cfg, Rng::Stream stream = Rng::Stream::kDownlink)
      : cfg_(cfg), rng_(cfg.seed, stream) {
    cfg_.validate();
  }

  /// Two draws per send, dropped or not, so the random sequence depends
  /// only on the seed and the send order.
  void send(const Payload& payload, double t_now) {
    const double u_drop = rng_.uniform();
    const double u_jitter = rng_.uniform();
    ++sent_;
    if (u_drop < cfg_.drop_prob) return;
    double t_deliver = t_now + cfg_.base_delay + u_jitter * cfg_.jitter_max;
    if (!cfg_.allow_reorder) t_deliver = std::max(t_deliver, last_deliver_);
    last_deliver_ = t_deliver;
    in_flight_.push_back({payload, t_now, t_deliver, payload.seq});
  }

  /// Delivers everything due at t_now and returns the highest-seq payload
  /// if it is newer than the last one returned.
  std::optional<Payload> receive_latest(double t_now) {
    auto due = [t_now](const InFlightMsg<Payload>& m) { return m.t_deliver <= t_now; };
    for (const auto& m : in_flight_) {
      if (due(m)) {
        latest_.offer(m.payload);
        ++delivered_;
      }
    }
    std::erase_if(in_flight_, due);
    return latest_.take();
  }

  std::size_t in_flight() const { return in_flight_.size(); }
  std::size_t sent() const { return sent_; }
  std::size_t delivered() const { return delivered_; }
  const std::vector<InFlightMsg<Payload>>& queue() const { return in_flight_; }

 private:
  ChannelConfig cfg_;
  Rng rng_;
  std::vector<InFlightMsg<Payload>> in_flight_;
  LatestBySeq<Payload> latest_;
  double last_deliver_ = 0.0;
  std::size_t sent_ = 0;
  std::size_t delivered_ = 0;
};

}  // namespace exhand
