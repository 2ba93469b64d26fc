#pragma once

#include <cstdint>
#include <random>

namespace exhand {

/// Seeded generator with a portable uniform draw.
///
/// std::uniform_real_distribution is implementation-defined, so the double is
/// built directly from the top 53 bits of the engine output. Every random
/// consumer in a run owns its own stream, derived from the run seed and a
/// stream id, so changing one consumer never perturbs another.
class Rng {
 public:
  enum class Stream : std::uint64_t {
    kMonitorNoise = 1,
    kWorldRate = 2,
    kDownlink = 3,
    kUplink = 4,
    kSynthetic = 5,
    kRelease = 6,
  };

  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}
  Rng(std::uint64_t seed, Stream stream)
      : engine_(mix(seed ^ mix(static_cast<std::uint64_t>(stream)))) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; consumes two draws.
  double normal();

  std::uint64_t next_u64() { return engine_(); }

  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace exhand
