#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace exhand {

/// One controller-tick sample of the logged signals.
struct LogRecord {
  double t = 0.0;      // s
  double q = 0.0;      // m, encoder position
  double qdot = 0.0;   // m/s
  double F_des = 0.0;  // N
  double I_des = 0.0;  // A
  bool c = false;      // collision condition applying
  double F_mon = 0.0;  // N
  // bilateral only; NaN while no collision plane / wall position is known
  double d = std::numeric_limits<double>::quiet_NaN();
  double q_lim = std::numeric_limits<double>::quiet_NaN();
};

enum class LogKind { kDrop, kBilateral };

struct RunLog {
  LogKind kind = LogKind::kDrop;
  /// Resolved configuration, echoed as comment lines in the CSV.
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<LogRecord> records;
};

}  // namespace exhand
