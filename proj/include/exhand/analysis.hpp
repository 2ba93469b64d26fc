#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "exhand/plant.hpp"
#include "exhand/runlog.hpp"

namespace exhand {

enum class Regression { kForceOnPosition, kPositionOnForce };

/// Thresholds of the measurement procedures. The stability and settling
/// thresholds operationalize "oscillates continuously" and "comes to rest";
/// they are tunable, these are the documented defaults.
struct AnalysisParams {
  // stiffness
  double force_min = 0.8;  // N
  double force_max = 4.5;  // N
  std::size_t moving_average = 10;
  std::size_t min_points = 20;
  Regression regression = Regression::kForceOnPosition;
  // stability
  double window_start = 0.5;  // s after contact onset
  double window_end = 1.5;
  int min_sign_changes = 20;
  int min_reentries = 2;  // wall re-strikes in the window; 0 disables
  double amplitude_steps = 10.0;  // peak-to-peak, encoder steps
  // settling
  double settle_band_steps = 5.0;
  double settle_hold = 0.05;    // s
  double final_window = 0.1;    // s
  double episode_gap = 0.1;     // s without contact that ends an episode
  // records after this time are ignored, e.g. a scripted release after the hold
  double settle_until = std::numeric_limits<double>::infinity();
  double encoder_step = QuantizerSpec{}.encoder_step();

  void validate() const;
};

struct ForcePosition {
  double q;  // m
  double F;  // N
};

struct Episode {
  std::size_t begin;  // first record with c
  std::size_t end;    // one past the last record with c
};

/// Contact episodes dissected by the contact flag; gaps shorter than
/// episode_gap do not split an episode.
std::vector<Episode> contact_episodes(const RunLog& log, double episode_gap);

/// (q, F_mon) for every record with the contact flag set.
std::vector<ForcePosition> contact_pairs(std::span<const RunLog> logs);

/// Stiffness identification: keep pairs with F in [force_min, force_max],
/// sort by ascending force, smooth positions with a full-window unweighted
/// moving average, least-squares fit, return the force/position slope.
/// Throws AnalysisError for too few points or zero position variance.
double estimate_stiffness(std::vector<ForcePosition> pairs, const AnalysisParams& p = {});
double estimate_stiffness(std::span<const RunLog> logs, const AnalysisParams& p = {});

enum class Stability { kStable, kUnstable };
std::string_view to_string(Stability s);

/// Unstable iff within [onset + window_start, onset + window_end] q spans
/// more than amplitude_steps encoder steps and the load keeps moving: the
/// velocity changes sign at least min_sign_changes times, or the load leaves
/// and strikes the wall again at least min_reentries times (a bounce slower
/// than the sign-change gate can see). Throws AnalysisError without a
/// contact onset or when the log ends before the window does.
Stability classify_stability(const RunLog& log, const AnalysisParams& p = {});

/// Time from the first contact tick until q stays within settle_band_steps
/// of its final value for settle_hold seconds. The final value is the mean q
/// over the last final_window of the first contact episode, cut at settle_until.
double settling_time(const RunLog& log, const AnalysisParams& p = {});

/// Velocity at the first contact tick from a quadratic least-squares fit of
/// q over the preceding `window` seconds (at least four ticks).
double entry_speed(const RunLog& log, double window = 0.02);

/// Index of the first record with the contact flag, or records.size().
std::size_t first_contact(const RunLog& log);

}  // namespace exhand
