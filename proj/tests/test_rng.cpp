#include <doctest.h>

#include <cmath>

#include "exhand/rng.hpp"

using exhand::Rng;

TEST_CASE("same seed and stream give the same sequence") {
  Rng a(42, Rng::Stream::kDownlink), b(42, Rng::Stream::kDownlink);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams of one seed are distinct") {
  Rng a(42, Rng::Stream::kDownlink), b(42, Rng::Stream::kUplink);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64();
  CHECK(same == 0);
}

TEST_CASE("uniform stays in [0, 1) and has the right moments") {
  Rng r(7);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("uniform is built from the top 53 bits") {
  Rng a(3), b(3);
  const std::uint64_t raw = b.next_u64();
  CHECK(a.uniform() == static_cast<double>(raw >> 11) * 0x1.0p-53);
}

TEST_CASE("normal draws") {
  Rng r(11);
  double sum = 0, sum2 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}
