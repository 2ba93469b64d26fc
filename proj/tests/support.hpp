#pragma once

// Small helpers for property tests: a seeded generator and a loop that
// reports the failing case index.

#include <cstdint>
#include <functional>

#include "exhand/geometry.hpp"
#include "exhand/rng.hpp"

namespace testing {

struct Gen {
  exhand::Rng rng;
  explicit Gen(std::uint64_t seed) : rng(seed, exhand::Rng::Stream::kSynthetic) {}
  double real(double lo, double hi) { return rng.uniform(lo, hi); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng.uniform() * (hi - lo + 1)); }
  bool coin() { return rng.uniform() < 0.5; }
  exhand::Vec3 vec(double lo, double hi) { return {real(lo, hi), real(lo, hi), real(lo, hi)}; }
  exhand::Vec3 unit() {
    exhand::Vec3 v;
    do {
      v = vec(-1.0, 1.0);
    } while (v.norm() < 1e-3 || v.norm() > 1.0);
    return v.normalized();
  }
};

inline constexpr int kCases = 500;

}  // namespace testing
