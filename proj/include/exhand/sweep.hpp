#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exhand/analysis.hpp"
#include "exhand/simcore.hpp"

namespace exhand {

struct SweepConfig {
  std::vector<double> frequencies{90, 100, 200, 500, 1000, 2000};  // Hz
  std::vector<double> k_grid{500, 1000, 1500, 2000, 3000, 5000, 7500, 10000, 15000, 20000, 30000, 40000};
  std::vector<double> b_grid{0};
  DropConfig drop;  // template; f_loop, k, b and seed are overridden per cell
  AnalysisParams analysis;
  std::uint64_t seed = 1;

  void validate() const;
  std::size_t cell_count() const { return frequencies.size() * k_grid.size() * b_grid.size(); }
};

enum class CellStatus { kStable, kUnstable, kError };

struct SweepCell {
  std::size_t index = 0;  // row-major over (f, k, b)
  double f = 0, k = 0, b = 0;
  CellStatus status = CellStatus::kError;
  std::optional<double> stiffness;  // stable cells only
  std::string note;                 // error text, empty when clean
};

struct FrequencySummary {
  double f = 0;
  std::optional<double> max_stable_k_b0;
  std::optional<double> best_stiffness;
  double best_k = 0, best_b = 0;
};

struct SweepReport {
  std::vector<SweepCell> cells;
  std::vector<FrequencySummary> summary;
};

/// Reference stiffness rows (Frequency Hz, k N/m, b Ns/m, identified N/m)
/// measured on the physical device; report context only.
struct HardwareReference {
  double f, k, b, stiffness;
};
inline constexpr HardwareReference kHardwareReference[] = {
    {90, 1500, 0, 1374},      {100, 2000, 0, 1506},     {200, 2000, 15, 7203},
    {500, 6000, 20, 11977},   {1000, 10000, 40, 18936}, {2000, 20000, 60, 50004},
};

/// Evaluate a single cell: drop run, stability verdict, stiffness if stable.
/// Never throws; failures are recorded on the cell.
SweepCell run_cell(const SweepConfig& cfg, std::size_t index);

/// Serial reference: cells in index order.
SweepReport run_sweep(const SweepConfig& cfg);

/// Same cells evaluated with OpenMP; identical report to run_sweep.
SweepReport run_sweep_parallel(const SweepConfig& cfg);

/// Per-frequency maxima from stable cells only.
std::vector<FrequencySummary> summarize(const SweepConfig& cfg, const std::vector<SweepCell>& cells);

std::string to_string(CellStatus s);

}  // namespace exhand
