#include <doctest.h>

#include <cmath>

#include "exhand/error.hpp"
#include "exhand/plant.hpp"
#include "exhand/precontact.hpp"
#include "support.hpp"

using namespace exhand;

TEST_CASE("tracking far from the plane") {
  WallTracker w;
  w = update_wall(w, -0.020, 0.000);
  REQUIRE(w.q_lim);
  CHECK(*w.q_lim == 0.020);
  CHECK_FALSE(w.frozen);
}

TEST_CASE("approach sequence tracks then freezes") {
  WallTracker w;
  const double d[] = {-0.020, -0.006, -0.003, -0.001};
  const double q[] = {0.000, 0.014, 0.017, 0.019};
  const bool frozen[] = {false, false, true, true};
  for (int i = 0; i < 4; ++i) {
    w = update_wall(w, d[i], q[i]);
    REQUIRE(w.q_lim);
    CHECK(*w.q_lim == doctest::Approx(0.020).epsilon(1e-12));
    CHECK(w.frozen == frozen[i]);
  }
  // the frozen value is the one from the last tracking update, bit for bit
  WallTracker ref;
  ref = update_wall(update_wall(ref, d[0], q[0]), d[1], q[1]);
  CHECK(*w.q_lim == *ref.q_lim);
}

TEST_CASE("starting inside the threshold sets q_lim once") {
  WallTracker w;
  w = update_wall(w, -0.004, 0.010);
  REQUIRE(w.q_lim);
  const double first = *w.q_lim;
  CHECK(first == doctest::Approx(0.014));
  CHECK(w.frozen);
  testing::Gen g(20);
  for (int i = 0; i < 100; ++i) {
    w = update_wall(w, g.real(-0.004, 0.01), g.real(0.0, 0.05));
    REQUIRE(*w.q_lim == first);
    REQUIRE(w.frozen);
  }
}

TEST_CASE("unfreezes only below d_lim minus the hysteresis") {
  WallTracker w;
  w = update_wall(w, -0.004, 0.0);
  REQUIRE(w.frozen);
  w = update_wall(w, -0.006, 0.0);  // inside the hysteresis band
  CHECK(w.frozen);
  w = update_wall(w, -0.0071, 0.0);
  CHECK_FALSE(w.frozen);
  CHECK(*w.q_lim == doctest::Approx(0.0071));
}

TEST_CASE("rigid approach keeps q_lim constant while tracking") {
  testing::Gen g(21);
  const double step = QuantizerSpec{}.encoder_step();
  QuantizerSpec qs;
  for (int i = 0; i < 50; ++i) {
    const double wall = g.real(0.02, 0.1);
    WallTracker w;
    const double s = g.real(0.5, 2.0);
    w.scale = s;
    for (double x = 0.0; x < wall - 0.01 * s; x += g.real(1e-4, 1e-3)) {
      const double q = read_encoder(x, qs);
      const double d = -(wall - x) / s;  // the task-space distance the world reports
      w = update_wall(w, d, q);
      if (!w.frozen) REQUIRE(std::abs(*w.q_lim - wall) <= step);
    }
  }
}

TEST_CASE("d_lim must be negative") {
  WallTracker w;
  w.d_lim = 0.005;
  CHECK_THROWS_WITH_AS(w.validate(), doctest::Contains("d_lim"), ConfigError);
  w.d_lim = 0.0;
  CHECK_THROWS(w.validate());
}

TEST_CASE("world tick on a plane straight ahead") {
  FingerChain ch;
  Scene s;
  // zero pose: tip at (0.09, 0, 0), palmar ray +y
  s.objects.emplace_back(Plane{Vec3(0.09, 0.1, 0.0), Vec3(0, -1, 0)});
  const auto m = world_tick({0, 0, 0}, s, ch, 7, 0.25);
  REQUIRE(m);
  CHECK((m->point - Vec3(0.09, 0.1, 0)).norm() < 1e-15);
  CHECK((m->normal - Vec3(0, -1, 0)).norm() < 1e-15);
  CHECK(m->seq == 7);
  CHECK(m->t_send == 0.25);
  const double d = signed_distance(fk_fingertip({0, 0, 0}, ch).tip, to_collision_plane(*m, ch));
  CHECK(d == doctest::Approx(-0.1 - ch.fingerpad_radius));
}

TEST_CASE("world tick answers in the hand frame") {
  testing::Gen g(22);
  FingerChain ch;
  for (int i = 0; i < 100; ++i) {
    Scene s;
    s.hand_in_world = planar_pose(g.real(-1, 1), g.real(-1, 1), g.real(-1, 1), g.real(-3, 3));
    const JointAngles th{g.real(-1, 1), g.real(0, 1), g.real(-1, 1)};
    const auto fp = fk_fingertip(th, ch);
    // plane 5 cm ahead along the ray, built in {R} then moved to the world
    const Vec3 pc_R = fp.tip + 0.05 * fp.ray();
    const Vec3 n_R = (-fp.ray() + 0.2 * g.unit()).normalized();
    s.objects.emplace_back(Plane{to_world_frame(Point3{pc_R}, s.hand_in_world).v,
                                 to_world_frame(Direction3{n_R}, s.hand_in_world).v});
    const auto m = world_tick(th, s, ch, 1, 0.0);
    REQUIRE(m);
    REQUIRE(std::abs((m->point - pc_R).dot(n_R)) < 1e-12);
    REQUIRE((m->normal - n_R).norm() < 1e-12);
  }
}

TEST_CASE("world tick misses") {
  FingerChain ch;
  CHECK_FALSE(world_tick({0, 0, 0}, Scene{}, ch, 1, 0.0));
  Scene behind;
  behind.objects.emplace_back(Plane{Vec3(0.09, -0.1, 0.0), Vec3(0, 1, 0)});
  CHECK_FALSE(world_tick({0, 0, 0}, behind, ch, 1, 0.0));
}

TEST_CASE("world tick depends only on the pose it is given") {
  FingerChain ch;
  Scene s;
  s.objects.emplace_back(Plane{Vec3(0.0, 0.3, 0.0), Vec3(0, -1, 0)});
  const JointAngles stale{0.4, 0.3, 0.2}, fresh{0.6, 0.5, 0.4};
  const auto a = world_tick(stale, s, ch, 1, 0.0);
  const auto b = world_tick(stale, s, ch, 1, 0.0);
  const auto c = world_tick(fresh, s, ch, 1, 0.0);
  REQUIRE(a);
  REQUIRE(c);
  CHECK(*a == *b);
  CHECK_FALSE(a->point.isApprox(c->point));
}
