#include "exhand/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <string>

#include "exhand/error.hpp"
#include "exhand/rng.hpp"

namespace exhand {

void AnalysisParams::validate() const {
  if (!(force_min < force_max)) throw ConfigError("analysis.force_min must be < force_max");
  if (moving_average < 1) throw ConfigError("analysis.moving_average must be >= 1");
  if (!(window_start < window_end)) throw ConfigError("analysis.window_start must be < window_end");
  if (!(encoder_step > 0.0)) throw ConfigError("analysis.encoder_step must be > 0");
  if (!(settle_hold > 0.0 && final_window > 0.0)) throw ConfigError("analysis settle windows must be > 0");
}

std::size_t first_contact(const RunLog& log) {
  const auto it = std::find_if(log.records.begin(), log.records.end(),
                               [](const LogRecord& r) { return r.c; });
  return static_cast<std::size_t>(it - log.records.begin());
}

std::vector<Episode> contact_episodes(const RunLog& log, double episode_gap) {
  std::vector<Episode> out;
  const auto& rec = log.records;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (!rec[i].c) continue;
    if (!out.empty() && rec[i].t - rec[out.back().end - 1].t <= episode_gap) {
      out.back().end = i + 1;
    } else {
      out.push_back({i, i + 1});
    }
  }
  return out;
}

std::vector<ForcePosition> contact_pairs(std::span<const RunLog> logs) {
  std::vector<ForcePosition> pairs;
  for (const auto& log : logs) {
    for (const auto& r : log.records) {
      if (r.c) pairs.push_back({r.q, r.F_mon});
    }
  }
  return pairs;
}

double estimate_stiffness(std::vector<ForcePosition> pairs, const AnalysisParams& p) {
  std::erase_if(pairs, [&](const ForcePosition& fp) {
    return !(fp.F >= p.force_min && fp.F <= p.force_max);
  });
  if (pairs.size() < std::max(p.min_points, p.moving_average + 1)) {
    throw AnalysisError("stiffness: " + std::to_string(pairs.size()) +
                        " pairs in the force window, need " + std::to_string(p.min_points));
  }
  // F_mon is quantized, so ties are common. Breaking them by q would turn every force
  // level into a horizontal run after averaging; a hash of q scatters them instead
  // and keeps the result independent of input order.
  const auto scatter = [](double q) { return Rng::mix(std::bit_cast<std::uint64_t>(q)); };
  std::sort(pairs.begin(), pairs.end(), [&](const ForcePosition& a, const ForcePosition& b) {
    if (a.F != b.F) return a.F < b.F;
    const auto ha = scatter(a.q), hb = scatter(b.q);
    return ha != hb ? ha < hb : a.q < b.q;
  });

  const std::size_t w = p.moving_average;
  const std::size_t n = pairs.size() - w + 1;
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  double sum_q = 0.0;
  double sum_F = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    sum_q += pairs[i].q;
    sum_F += pairs[i].F;
  }
  for (std::size_t j = 0;; ++j) {
    xs[j] = sum_q / static_cast<double>(w);
    ys[j] = sum_F / static_cast<double>(w);
    if (j + 1 == n) break;
    sum_q += pairs[j + w].q - pairs[j].q;
    sum_F += pairs[j + w].F - pairs[j].F;
  }

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const double mq = mean(xs);
  const double mF = mean(ys);
  double sqq = 0.0;
  double sFF = 0.0;
  double sqF = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dq = xs[j] - mq;
    const double dF = ys[j] - mF;
    sqq += dq * dq;
    sFF += dF * dF;
    sqF += dq * dF;
  }
  // the running sums leave rounding residue on a constant input
  const double resid = 1e-9 * std::abs(mq);
  if (!(sqq > static_cast<double>(n) * resid * resid)) {
    throw AnalysisError("stiffness: zero position variance");
  }
  if (p.regression == Regression::kForceOnPosition) return sqF / sqq;
  if (!(sqF != 0.0)) throw AnalysisError("stiffness: zero force-position covariance");
  return sFF / sqF;
}

double estimate_stiffness(std::span<const RunLog> logs, const AnalysisParams& p) {
  return estimate_stiffness(contact_pairs(logs), p);
}

std::string_view to_string(Stability s) { return s == Stability::kStable ? "stable" : "unstable"; }

Stability classify_stability(const RunLog& log, const AnalysisParams& p) {
  const auto& rec = log.records;
  const std::size_t onset = first_contact(log);
  if (onset == rec.size()) throw AnalysisError("stability: log has no contact onset");
  const double t0 = rec[onset].t + p.window_start;
  const double t1 = rec[onset].t + p.window_end;
  if (rec.back().t < t1) throw AnalysisError("stability: run too short for the observation window");

  int changes = 0;
  int last_sign = 0;
  int reentries = 0;
  bool prev_c = true;
  double q_min = std::numeric_limits<double>::infinity();
  double q_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = onset; i < rec.size() && rec[i].t <= t1; ++i) {
    if (rec[i].t < t0) continue;
    if (rec[i].c && !prev_c) ++reentries;
    prev_c = rec[i].c;
    q_min = std::min(q_min, rec[i].q);
    q_max = std::max(q_max, rec[i].q);
    const int s = (rec[i].qdot > 0.0) - (rec[i].qdot < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  const bool oscillating = changes >= p.min_sign_changes;
  const bool bouncing = p.min_reentries > 0 && reentries >= p.min_reentries;
  const bool large = (q_max - q_min) > p.amplitude_steps * p.encoder_step;
  return (oscillating || bouncing) && large ? Stability::kUnstable : Stability::kStable;
}

double settling_time(const RunLog& log, const AnalysisParams& p) {
  const auto& rec = log.records;
  const auto episodes = contact_episodes(log, p.episode_gap);
  if (episodes.empty()) throw AnalysisError("settling: log has no contact");
  Episode ep = episodes.front();
  while (ep.end > ep.begin + 1 && rec[ep.end - 1].t > p.settle_until) --ep.end;
  const double t_onset = rec[ep.begin].t;
  const double t_end = rec[ep.end - 1].t;

  double sum = 0.0;
  int count = 0;
  for (std::size_t i = ep.begin; i < ep.end; ++i) {
    if (rec[i].t >= t_end - p.final_window) {
      sum += rec[i].q;
      ++count;
    }
  }
  const double q_final = sum / count;
  const double band = p.settle_band_steps * p.encoder_step;

  std::size_t run_start = ep.begin;
  bool in_run = false;
  for (std::size_t i = ep.begin; i < ep.end; ++i) {
    if (std::abs(rec[i].q - q_final) < band) {
      if (!in_run) {
        run_start = i;
        in_run = true;
      }
      if (rec[i].t - rec[run_start].t >= p.settle_hold) return rec[run_start].t - t_onset;
    } else {
      in_run = false;
    }
  }
  throw AnalysisError("settling: response does not settle within the contact episode");
}

double entry_speed(const RunLog& log, double window) {
  const auto& rec = log.records;
  const std::size_t onset = first_contact(log);
  if (onset == rec.size()) throw AnalysisError("entry speed: log has no contact onset");
  const double t_on = rec[onset].t;
  std::size_t first = onset;
  while (first > 0 && (t_on - rec[first - 1].t <= window || onset - first < 4)) --first;
  const std::size_t n = onset - first + 1;
  if (n < 4) throw AnalysisError("entry speed: too few samples before contact");
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = rec[first + i].t - t_on;
    A(i, 0) = 1.0;
    A(i, 1) = tau;
    A(i, 2) = tau * tau;
    y(i) = rec[first + i].q;
  }
  const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
  return coef(1);
}

}  // namespace exhand
