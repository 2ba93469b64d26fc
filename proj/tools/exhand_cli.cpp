// exhand: run the drop / bilateral experiments, parameter sweeps, and log analysis.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "exhand/analysis.hpp"
#include "exhand/config.hpp"
#include "exhand/csv.hpp"
#include "exhand/simcore.hpp"
#include "exhand/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace exhand;

RunConfigFile resolve(const std::string& path, ExperimentKind kind, std::optional<std::uint64_t> seed) {
  RunConfigFile cfg = path.empty() ? default_config(kind) : load_config(path);
  if (cfg.kind != kind) {
    throw ConfigError(path + ": experiment = " + std::string(to_string(cfg.kind)) + ", but the " +
                      std::string(to_string(kind)) + " subcommand was used");
  }
  if (seed) {
    cfg.seed = *seed;
    cfg.drop.seed = *seed;
    cfg.bilateral.seed = *seed;
    cfg.sweep.seed = *seed;
  }
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot open " + path + " for writing");
  return out;
}

void print_number(const char* key, double v) { std::printf("%-20s %.9g\n", key, v); }

int analyze(const std::vector<std::string>& paths, const AnalysisParams& p) {
  std::vector<RunLog> logs;
  for (const auto& path : paths) logs.push_back(read_log_csv(path));
  std::size_t records = 0;
  for (const auto& l : logs) records += l.records.size();
  std::printf("%-20s %zu\n", "logs", logs.size());
  std::printf("%-20s %zu\n", "records", records);
  print_number("stiffness_N_per_m", estimate_stiffness(std::span<const RunLog>(logs), p));
  int rc = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const std::string tag = logs.size() > 1 ? "[" + std::to_string(i) + "] " : "";
    try {
      const Stability s = classify_stability(logs[i], p);
      std::printf("%s%-20s %s\n", tag.c_str(), "stability", std::string(to_string(s)).c_str());
      if (s == Stability::kStable) {
        std::printf("%s%-20s %.9g\n", tag.c_str(), "settling_time_s", settling_time(logs[i], p));
      } else {
        std::printf("%s%-20s n/a\n", tag.c_str(), "settling_time_s");
      }
      std::printf("%s%-20s %.9g\n", tag.c_str(), "entry_speed_m_per_s", entry_speed(logs[i]));
    } catch (const AnalysisError& e) {
      std::printf("%s%-20s %s\n", tag.c_str(), "error", e.what());
      rc = 1;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual-wall haptic controller simulator and experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;

  auto* drop = app.add_subcommand("drop", "mass-drop stiffness identification run");
  drop->add_option("-c,--config", config_path, "config file (defaults when omitted)");
  drop->add_option("-o,--out", out_path, "output log CSV")->required();
  drop->add_option("--seed", seed, "override the config seed");

  auto* bil = app.add_subcommand("bilateral", "master/world co-simulation with pre-contact detection");
  bil->add_option("-c,--config", config_path, "config file (defaults when omitted)");
  bil->add_option("-o,--out", out_path, "output log CSV")->required();
  bil->add_option("--seed", seed, "override the config seed");

  std::string cells_path, summary_path;
  bool serial = false;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "stability sweep over loop frequency and wall gains");
  sweep->add_option("-c,--config", config_path, "config file (defaults when omitted)");
  sweep->add_option("--cells", cells_path, "per-cell CSV")->required();
  sweep->add_option("--summary", summary_path, "per-frequency summary CSV")->required();
  sweep->add_option("--seed", seed, "override the config seed");
  sweep->add_flag("--serial", serial, "use the single-threaded reference kernel");
  sweep->add_option("-j,--threads", threads, "OpenMP threads (0 = runtime default)");

  std::vector<std::string> logs;
  auto* an = app.add_subcommand("analyze", "stiffness, stability and settling of logged runs");
  an->add_option("-c,--config", config_path, "config file with an [analysis] section");
  an->add_option("logs", logs, "log CSV files")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*drop) {
      const auto cfg = resolve(config_path, ExperimentKind::kDrop, seed);
      RunLog log = run_drop_experiment(cfg.drop);
      log.header = cfg.echo();
      write_log_csv(out_path, log);
    } else if (*bil) {
      const auto cfg = resolve(config_path, ExperimentKind::kBilateral, seed);
      RunLog log = run_bilateral_experiment(cfg.bilateral);
      log.header = cfg.echo();
      write_log_csv(out_path, log);
    } else if (*sweep) {
      const auto cfg = resolve(config_path, ExperimentKind::kSweep, seed);
#ifdef _OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#endif
      const SweepReport rep = serial ? run_sweep(cfg.sweep) : run_sweep_parallel(cfg.sweep);
      const auto header = cfg.echo();
      auto cells = open_out(cells_path);
      write_sweep_cells_csv(cells, rep, header);
      auto summary = open_out(summary_path);
      write_sweep_summary_csv(summary, rep, header);
      if (!cells || !summary) throw CsvError("write failed");
      for (const auto& s : rep.summary) {
        std::printf("f=%-6g max_stable_k(b=0)=%s\n", s.f,
                    s.max_stable_k_b0 ? std::to_string(static_cast<long>(*s.max_stable_k_b0)).c_str() : "none");
      }
    } else if (*an) {
      const auto cfg = resolve(config_path, ExperimentKind::kAnalyze, std::nullopt);
      return analyze(logs, cfg.analysis);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "exhand: %s\n", e.what());
    return 1;
  }
  return 0;
}
