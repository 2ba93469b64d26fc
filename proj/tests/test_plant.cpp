#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "exhand/plant.hpp"
#include "support.hpp"

using namespace exhand;

namespace {

PlantParams ideal() {
  PlantParams p;
  p.c_visc = 0.0;
  p.F_coulomb = 0.0;
  p.m_reflected = 0.0;
  return p;
}

constexpr double kDt = 50e-6;

}  // namespace

TEST_CASE("free fall: v grows by g dt per step") {
  const PlantParams p = ideal();
  PlantState s{};
  double v_ref = 0.0;
  for (int n = 1; n <= 2000; ++n) {
    s = step_plant(s, 0.0, p, kDt);
    v_ref += p.g * kDt;
    REQUIRE(s.v == doctest::Approx(v_ref).epsilon(1e-12));
  }
  CHECK(s.v == doctest::Approx(p.g * 2000 * kDt).epsilon(1e-12));
}

TEST_CASE("free fall position within 0.1% of g t^2 / 2 after 0.1 s") {
  const PlantParams p = ideal();
  PlantState s{};
  for (int n = 0; n < 2000; ++n) s = step_plant(s, 0.0, p, kDt);
  const double exact = 0.5 * p.g * 0.1 * 0.1;
  CHECK(std::abs(s.x - exact) / exact < 1e-3);
}

TEST_CASE("cable force equal to weight keeps the load at rest") {
  PlantParams p;
  PlantState s{0.01, 0.0};
  for (int n = 0; n < 1000; ++n) s = step_plant(s, p.m * p.g, p, kDt);
  CHECK(s.x == 0.01);
  CHECK(s.v == 0.0);
}

TEST_CASE("terminal velocity (m g - Fc) / c") {
  PlantParams p;
  p.c_visc = 5.0;
  p.F_coulomb = 0.2;
  PlantState s{};
  for (int n = 0; n < 100000; ++n) s = step_plant(s, 0.0, p, kDt);  // 5 s, 50 time constants
  const double v_term = (p.m * p.g - p.F_coulomb) / p.c_visc;
  CHECK(s.v == doctest::Approx(v_term).epsilon(1e-9));
}

TEST_CASE("energy drift below 0.01% over 1 s without losses") {
  const PlantParams p = ideal();
  PlantState s{};
  for (int n = 0; n < 20000; ++n) s = step_plant(s, 0.0, p, kDt);
  const double kinetic = 0.5 * p.total_mass() * s.v * s.v;
  const double drift = std::abs(kinetic - p.m * p.g * s.x);
  CHECK(drift / kinetic < 1e-4);
}

TEST_CASE("static friction holds a load that friction can hold") {
  PlantParams p;
  p.g = 0.0;
  p.F_coulomb = 0.5;
  PlantState s{};
  s = step_plant(s, 0.0, p, kDt, 0.3);
  CHECK(s.v == 0.0);
  s = step_plant(s, 0.0, p, kDt, 0.7);
  CHECK(s.v > 0.0);
}

TEST_CASE("Coulomb friction alone never reverses the velocity") {
  testing::Gen g(1);
  PlantParams p;
  p.g = 0.0;
  p.c_visc = 0.0;
  for (int i = 0; i < testing::kCases; ++i) {
    p.F_coulomb = g.real(0.01, 5.0);
    PlantState s{0.0, g.real(-1e-3, 1e-3)};
    const double sign0 = std::copysign(1.0, s.v);
    for (int n = 0; n < 200; ++n) {
      s = step_plant(s, 0.0, p, kDt);
      REQUIRE((s.v == 0.0 || std::copysign(1.0, s.v) == sign0));
    }
  }
}

TEST_CASE("negative cable force is rejected") {
  CHECK_THROWS_AS(step_plant({}, -0.1, PlantParams{}, kDt), std::invalid_argument);
}

TEST_CASE("encoder examples") {
  QuantizerSpec q;
  const double step = q.encoder_step();
  CHECK(step == doctest::Approx(1.5708e-5).epsilon(1e-4));
  CHECK(read_encoder(0.0, q) == 0.0);
  CHECK(read_encoder(1e-4, q) == doctest::Approx(6 * step).epsilon(1e-12));
  CHECK(read_encoder(1e-4, q) == doctest::Approx(9.4248e-5).epsilon(1e-4));
  CHECK(read_encoder(std::nextafter(step, 0.0), q) == 0.0);
  CHECK(read_encoder(step, q) == doctest::Approx(step).epsilon(1e-15));
  CHECK(read_encoder(-0.5 * step, q) == doctest::Approx(-step).epsilon(1e-15));
}

TEST_CASE("encoder is idempotent and monotone") {
  testing::Gen g(2);
  QuantizerSpec q;
  for (int i = 0; i < testing::kCases; ++i) {
    const double a = g.real(-0.2, 0.2);
    const double b = a + g.real(0.0, 1e-4);
    REQUIRE(read_encoder(read_encoder(a, q), q) == read_encoder(a, q));
    REQUIRE(read_encoder(a, q) <= read_encoder(b, q));
    REQUIRE(read_encoder(a, q) <= a);
  }
}

TEST_CASE("current quantization examples") {
  QuantizerSpec q;
  ForceCalib k;
  auto a = apply_current(0.0, q, k);
  CHECK(a.I_applied == 0.0);
  CHECK(a.F_cable == 0.0);
  a = apply_current(7.0, q, k);
  CHECK(a.I_applied == 6.6);
  CHECK(a.F_cable == doctest::Approx(66.0));
  a = apply_current(0.100, q, k);
  CHECK(a.I_applied == doctest::Approx(0.0944).epsilon(1e-12));
  a = apply_current(-1.0, q, k);
  CHECK(a.I_applied == 0.0);
  CHECK_FALSE(std::signbit(a.F_cable));
}

TEST_CASE("current quantization is idempotent and never pushes") {
  testing::Gen g(3);
  QuantizerSpec q;
  ForceCalib k;
  for (int i = 0; i < testing::kCases; ++i) {
    const double I = g.real(-1.0, 8.0);
    const auto a = apply_current(I, q, k);
    REQUIRE(a.F_cable >= 0.0);
    REQUIRE(a.I_applied <= q.current_max);
    REQUIRE(apply_current(a.I_applied, q, k).I_applied == a.I_applied);
  }
}

TEST_CASE("monitor without noise returns K_F I") {
  QuantizerSpec q;
  q.monitor_noise_pp = 0.0;
  ForceCalib k;
  Rng r(1);
  const double I = apply_current(1.0, q, k).I_applied;
  CHECK(monitor_force(I, q, k, r) == doctest::Approx(k.K_F * I).epsilon(1e-12));
}

TEST_CASE("monitor noise lands on the two neighbouring steps") {
  // 1.0 A +- 23.6 mA covers 20.69..21.69 steps, which round to 21 or 22
  QuantizerSpec q;
  ForceCalib k;
  Rng r(5);
  std::set<long> seen;
  for (int i = 0; i < 2000; ++i) {
    const double I = monitor_force(1.0, q, k, r) / k.K_F;
    const double steps = I / q.current_step;
    REQUIRE(std::abs(steps - std::round(steps)) < 1e-9);
    seen.insert(std::lround(steps));
  }
  CHECK(seen == std::set<long>{21, 22});
  CHECK(21 * 0.0472 == doctest::Approx(0.9912));
  CHECK(22 * 0.0472 == doctest::Approx(1.0384));
}

TEST_CASE("monitor noise is reproducible from the seed") {
  QuantizerSpec q;
  ForceCalib k;
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(monitor_force(2.0, q, k, a) == monitor_force(2.0, q, k, b));
}

TEST_CASE("parameter validation") {
  PlantParams p;
  p.m = 0.0;
  CHECK_THROWS(p.validate());
  QuantizerSpec q;
  q.pulley_radius = -1;
  CHECK_THROWS(q.validate());
  ForceCalib k;
  k.K_F = 0;
  CHECK_THROWS(k.validate());
}
