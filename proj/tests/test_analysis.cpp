#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "exhand/analysis.hpp"
#include "exhand/error.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace exhand;

namespace {

constexpr double kT = 0.0005;

std::vector<ForcePosition> to_fp(const std::vector<testing::Pair>& p) {
  std::vector<ForcePosition> out;
  for (const auto& x : p) out.push_back({x.q, x.F});
  return out;
}

std::vector<testing::Pair> noisy_spring(std::uint64_t seed, double k, int n, double sigma) {
  testing::Gen g(seed);
  std::vector<testing::Pair> p;
  for (int i = 0; i < n; ++i) {
    const double q = g.real(0.8 / k, 4.5 / k);
    p.push_back({q, k * q + sigma * g.rng.normal()});
  }
  return p;
}

// Log with q(t) given, contact from the first sample on.
template <class F>
RunLog synth(double duration, F q_of_t, bool contact = true) {
  RunLog log;
  const int n = static_cast<int>(std::lround(duration / kT));
  double q_prev = q_of_t(0.0);
  for (int i = 0; i <= n; ++i) {
    LogRecord r;
    r.t = i * kT;
    r.q = q_of_t(r.t);
    r.qdot = i ? (r.q - q_prev) / kT : 0.0;
    r.c = contact;
    r.F_mon = 1000.0 * r.q;
    q_prev = r.q;
    log.records.push_back(r);
  }
  return log;
}

}  // namespace

TEST_CASE("noise-free spring gives the exact slope") {
  std::vector<ForcePosition> p;
  for (int i = 0; i <= 400; ++i) {
    const double F = 0.8 + 3.7 * i / 400.0;
    p.push_back({F / 1000.0, F});
  }
  CHECK(std::abs(estimate_stiffness(p) - 1000.0) < 1e-9);
}

TEST_CASE("intercept does not change the slope") {
  testing::Gen g(50);
  for (int i = 0; i < 50; ++i) {
    const double k = g.real(500, 50000), c = g.real(-2, 2);
    std::vector<ForcePosition> p;
    for (int j = 0; j < 300; ++j) {
      const double q = g.real(-1e-3, 1e-2);
      p.push_back({q, k * q + c});
    }
    std::erase_if(p, [](const ForcePosition& x) { return x.F < 0.8 || x.F > 4.5; });
    if (p.size() < 30) continue;
    REQUIRE(estimate_stiffness(p) == doctest::Approx(k).epsilon(1e-9));
  }
}

TEST_CASE("noisy spring matches the oracle and lies within 2%") {
  const auto pairs = noisy_spring(5000, 5000, 500, 0.05);
  const double oracle = testing::stiffness_oracle(pairs);
  CHECK(oracle == doctest::Approx(5000.1572985863304).epsilon(1e-12));
  const double k = estimate_stiffness(to_fp(pairs));
  CHECK(k == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(std::abs(k - 5000) / 5000 < 0.02);
}

TEST_CASE("pipeline agrees with the oracle on random data") {
  testing::Gen g(51);
  for (int i = 0; i < 100; ++i) {
    const double k = g.real(1000, 40000);
    const auto pairs = noisy_spring(1000 + i, k, g.integer(40, 600), g.real(0.0, 0.3));
    REQUIRE(estimate_stiffness(to_fp(pairs)) == doctest::Approx(testing::stiffness_oracle(pairs)).epsilon(1e-9));
  }
}

TEST_CASE("input order does not matter") {
  testing::Gen g(52);
  for (int i = 0; i < 50; ++i) {
    auto p = to_fp(noisy_spring(2000 + i, 8000, 300, 0.1));
    // quantize the force so ties are common
    for (auto& x : p) x.F = std::round(x.F / 0.472) * 0.472;
    const double ref = estimate_stiffness(p);
    for (int s = 0; s < 5; ++s) {
      for (std::size_t j = p.size() - 1; j > 0; --j)
        std::swap(p[j], p[static_cast<std::size_t>(g.rng.uniform() * (j + 1))]);
      REQUIRE(estimate_stiffness(p) == ref);
    }
  }
}

TEST_CASE("degenerate inputs") {
  std::vector<ForcePosition> flat;
  for (int i = 0; i < 50; ++i) flat.push_back({0.001, 1.0 + i * 0.05});
  CHECK_THROWS_AS(estimate_stiffness(flat), AnalysisError);
  std::vector<ForcePosition> few;
  for (int i = 0; i < 10; ++i) few.push_back({i * 1e-4, 1.0 + i * 0.1});
  CHECK_THROWS_AS(estimate_stiffness(few), AnalysisError);
  std::vector<ForcePosition> outside;
  for (int i = 0; i < 50; ++i) outside.push_back({i * 1e-4, 10.0 + i});
  CHECK_THROWS_AS(estimate_stiffness(outside), AnalysisError);
}

TEST_CASE("position-on-force regression inverts a clean spring too") {
  std::vector<ForcePosition> p;
  for (int i = 0; i <= 200; ++i) {
    const double F = 0.8 + 3.7 * i / 200.0;
    p.push_back({F / 2500.0, F});
  }
  AnalysisParams a;
  a.regression = Regression::kPositionOnForce;
  CHECK(estimate_stiffness(p, a) == doctest::Approx(2500.0).epsilon(1e-9));
}

TEST_CASE("only contact samples are pooled") {
  RunLog a = synth(0.2, [](double t) { return 0.004 * t; });
  for (std::size_t i = 0; i < a.records.size(); i += 2) a.records[i].c = false;
  const auto pairs = contact_pairs(std::span(&a, 1));
  CHECK(pairs.size() == a.records.size() / 2);
}

TEST_CASE("converging response is stable") {
  const RunLog log = synth(2.0, [](double t) { return 0.001 * (1 - std::exp(-t / 0.01)); });
  CHECK(classify_stability(log) == Stability::kStable);
}

TEST_CASE("sustained oscillation is unstable") {
  const double step = QuantizerSpec{}.encoder_step();
  const RunLog log = synth(2.0, [&](double t) { return 0.001 + 20 * step * std::sin(2 * M_PI * 30 * t); });
  CHECK(classify_stability(log) == Stability::kUnstable);
}

TEST_CASE("quantization-scale limit cycle is stable") {
  const double step = QuantizerSpec{}.encoder_step();
  const RunLog log = synth(2.0, [&](double t) { return 0.001 + 4 * step * std::sin(2 * M_PI * 30 * t); });
  CHECK(classify_stability(log) == Stability::kStable);
}

TEST_CASE("slow bouncing off the wall is unstable") {
  // a few re-strikes per window: too few velocity reversals for the sign gate
  const double step = QuantizerSpec{}.encoder_step();
  RunLog log = synth(2.0, [&](double t) { return 0.001 + 50 * step * std::sin(2 * M_PI * 3 * t); });
  for (auto& r : log.records) r.c = r.q >= 0.001;
  log.records[0].c = true;
  CHECK(classify_stability(log) == Stability::kUnstable);
}

TEST_CASE("larger oscillation never turns unstable into stable") {
  testing::Gen g(53);
  const double step = QuantizerSpec{}.encoder_step();
  for (int i = 0; i < 100; ++i) {
    const double f = g.real(5, 200), a = g.real(0, 30) * step, s = g.real(1.0, 4.0);
    const RunLog small = synth(2.0, [&](double t) { return 0.001 + a * std::sin(2 * M_PI * f * t); });
    const RunLog big = synth(2.0, [&](double t) { return 0.001 + s * a * std::sin(2 * M_PI * f * t); });
    if (classify_stability(small) == Stability::kUnstable) REQUIRE(classify_stability(big) == Stability::kUnstable);
  }
}

TEST_CASE("stability needs the whole window") {
  const RunLog log = synth(1.0, [](double) { return 0.001; });
  CHECK_THROWS_AS(classify_stability(log), AnalysisError);
  const RunLog none = synth(3.0, [](double) { return 0.0; }, false);
  CHECK_THROWS_AS(classify_stability(none), AnalysisError);
}

TEST_CASE("settling: immediate landing is zero") {
  const RunLog log = synth(0.5, [](double) { return 0.002; });
  CHECK(settling_time(log) == 0.0);
}

TEST_CASE("settling of an exponential approach") {
  const double step = QuantizerSpec{}.encoder_step();
  const double tau = 0.005, A = 0.002, band = 5 * step;
  const RunLog log = synth(0.5, [&](double t) { return 0.01 - A * std::exp(-t / tau); });
  // first tick inside the band
  const double t_star = tau * std::log(A / band);
  const double expected = std::ceil(t_star / kT - 1e-9) * kT;
  CHECK(t_star == doctest::Approx(0.0163).epsilon(0.01));
  CHECK(settling_time(log) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("settling ignores records after settle_until") {
  const double step = QuantizerSpec{}.encoder_step();
  const RunLog log = synth(1.0, [&](double t) { return t < 0.5 ? 0.002 : 0.002 - 100 * step * (t - 0.5); });
  CHECK(settling_time(log) > 0.5);  // the ramp drags the final value along
  AnalysisParams p;
  p.settle_until = 0.5;
  CHECK(settling_time(log, p) == 0.0);
}

TEST_CASE("entry speed of a parabola") {
  RunLog log = synth(0.2, [](double t) { return 0.5 * 9.81 * t * t; }, false);
  const std::size_t on = 240;
  for (std::size_t i = on; i < log.records.size(); ++i) log.records[i].c = true;
  CHECK(first_contact(log) == on);
  CHECK(entry_speed(log) == doctest::Approx(9.81 * on * kT).epsilon(1e-9));
}

TEST_CASE("episodes split on long gaps only") {
  RunLog log = synth(1.0, [](double) { return 0.0; }, false);
  auto set = [&](double a, double b) {
    for (auto& r : log.records)
      if (r.t >= a && r.t < b) r.c = true;
  };
  set(0.1, 0.2);
  set(0.25, 0.3);  // 50 ms gap: same episode
  set(0.6, 0.7);
  const auto eps = contact_episodes(log, 0.1);
  REQUIRE(eps.size() == 2);
  CHECK(log.records[eps[0].begin].t == doctest::Approx(0.1));
  CHECK(log.records[eps[0].end - 1].t == doctest::Approx(0.2995));
  CHECK(log.records[eps[1].begin].t == doctest::Approx(0.6));
}
