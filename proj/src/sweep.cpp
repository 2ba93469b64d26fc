#include "exhand/sweep.hpp"

#include <algorithm>
#include <exception>

#include "exhand/error.hpp"

namespace exhand {

void SweepConfig::validate() const {
  auto check = [](const std::vector<double>& g, const char* name) {
    if (g.empty()) throw ConfigError(std::string("sweep.") + name + " must not be empty");
    if (!std::is_sorted(g.begin(), g.end()) ||
        std::adjacent_find(g.begin(), g.end()) != g.end()) {
      throw ConfigError(std::string("sweep.") + name + " must be strictly ascending");
    }
  };
  check(frequencies, "frequencies");
  check(k_grid, "k");
  check(b_grid, "b");
  analysis.validate();
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::kStable: return "stable";
    case CellStatus::kUnstable: return "unstable";
    default: return "error";
  }
}

SweepCell run_cell(const SweepConfig& cfg, std::size_t index) {
  const std::size_t nb = cfg.b_grid.size();
  const std::size_t nk = cfg.k_grid.size();
  SweepCell cell;
  cell.index = index;
  cell.f = cfg.frequencies[index / (nk * nb)];
  cell.k = cfg.k_grid[(index / nb) % nk];
  cell.b = cfg.b_grid[index % nb];

  DropConfig drop = cfg.drop;
  drop.f_loop = cell.f;
  drop.wall.k = cell.k;
  drop.wall.b = cell.b;
  drop.seed = cfg.seed + index;
  try {
    const RunLog log = run_drop_experiment(drop);
    const Stability verdict = classify_stability(log, cfg.analysis);
    cell.status = verdict == Stability::kStable ? CellStatus::kStable : CellStatus::kUnstable;
    if (verdict == Stability::kStable) {
      try {
        cell.stiffness = estimate_stiffness(std::span(&log, 1), cfg.analysis);
      } catch (const AnalysisError& e) {
        cell.note = e.what();
      }
    }
  } catch (const std::exception& e) {
    cell.status = CellStatus::kError;
    cell.note = e.what();
  }
  return cell;
}

std::vector<FrequencySummary> summarize(const SweepConfig& cfg, const std::vector<SweepCell>& cells) {
  std::vector<FrequencySummary> out;
  for (double f : cfg.frequencies) {
    FrequencySummary s;
    s.f = f;
    for (const auto& c : cells) {
      if (c.f != f || c.status != CellStatus::kStable) continue;
      if (c.b == 0.0 && (!s.max_stable_k_b0 || c.k > *s.max_stable_k_b0)) s.max_stable_k_b0 = c.k;
      if (c.stiffness && (!s.best_stiffness || *c.stiffness > *s.best_stiffness)) {
        s.best_stiffness = c.stiffness;
        s.best_k = c.k;
        s.best_b = c.b;
      }
    }
    out.push_back(s);
  }
  return out;
}

SweepReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepReport rep;
  rep.cells.reserve(cfg.cell_count());
  for (std::size_t i = 0; i < cfg.cell_count(); ++i) rep.cells.push_back(run_cell(cfg, i));
  rep.summary = summarize(cfg, rep.cells);
  return rep;
}

SweepReport run_sweep_parallel(const SweepConfig& cfg) {
  cfg.validate();
  SweepReport rep;
  const auto n = static_cast<long long>(cfg.cell_count());
  rep.cells.resize(cfg.cell_count());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    rep.cells[static_cast<std::size_t>(i)] = run_cell(cfg, static_cast<std::size_t>(i));
  }
  rep.summary = summarize(cfg, rep.cells);
  return rep;
}

}  // namespace exhand
