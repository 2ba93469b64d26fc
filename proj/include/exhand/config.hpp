#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exhand/analysis.hpp"
#include "exhand/simcore.hpp"
#include "exhand/sweep.hpp"

namespace exhand {

enum class ExperimentKind { kDrop, kBilateral, kSweep, kAnalyze };
std::string_view to_string(ExperimentKind k);

/// Scene choices reachable from a config file.
struct SceneSpec {
  std::string object = "plane";  // plane | sphere | none
  double ahead = 0.05;           // m along the start ray to the surface
  double radius = 0.03;          // m, sphere only
  double hand_x = 0.20, hand_y = 0.10, hand_z = 0.05;  // m
  double hand_yaw = 0.5;                               // rad
};

/// A resolved, validated run description. Only the member matching `kind`
/// is meaningful; the others keep their defaults.
struct RunConfigFile {
  ExperimentKind kind = ExperimentKind::kDrop;
  std::uint64_t seed = 1;
  DropConfig drop;
  BilateralConfig bilateral;
  SceneSpec scene;
  SweepConfig sweep;
  AnalysisParams analysis;

  /// Every resolved setting as ("section.key", value), defaults included.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// INI-style text:
///
///   experiment = drop        # drop | bilateral | sweep | analyze
///   seed = 7
///   [wall]
///   k = 15000
///
/// Both `#` and `;` start a comment. Sections and keys not used by the
/// selected experiment are rejected. Errors are ConfigError with the line
/// and key in the message.
RunConfigFile parse_config(std::string_view text);
RunConfigFile load_config(const std::filesystem::path& path);

/// Defaults for `kind` without any file.
RunConfigFile default_config(ExperimentKind kind);

}  // namespace exhand
