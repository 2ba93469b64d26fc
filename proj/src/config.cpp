#include "exhand/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "exhand/error.hpp"

namespace exhand {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kDrop: return "drop";
    case ExperimentKind::kBilateral: return "bilateral";
    case ExperimentKind::kSweep: return "sweep";
    case ExperimentKind::kAnalyze: return "analyze";
  }
  return "?";
}

namespace {

using Target = std::variant<double*, int*, bool*, std::uint64_t*, std::vector<double>*, std::string*>;

struct Binding {
  std::string section;
  std::string key;
  Target target;
  std::string name() const { return section.empty() ? key : section + "." + key; }
};

struct Entry {
  std::string value;
  int line;
};

std::optional<ExperimentKind> parse_kind(std::string_view s) {
  if (s == "drop") return ExperimentKind::kDrop;
  if (s == "bilateral") return ExperimentKind::kBilateral;
  if (s == "sweep") return ExperimentKind::kSweep;
  if (s == "analyze") return ExperimentKind::kAnalyze;
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void add_hardware(std::vector<Binding>& out, Hardware& hw) {
  out.push_back({"plant", "m", &hw.plant.m});
  out.push_back({"plant", "g", &hw.plant.g});
  out.push_back({"plant", "c_visc", &hw.plant.c_visc});
  out.push_back({"plant", "F_coulomb", &hw.plant.F_coulomb});
  out.push_back({"plant", "m_reflected", &hw.plant.m_reflected});
  out.push_back({"quantizer", "encoder_counts_per_rev", &hw.quantizer.encoder_counts_per_rev});
  out.push_back({"quantizer", "pulley_radius", &hw.quantizer.pulley_radius});
  out.push_back({"quantizer", "current_step", &hw.quantizer.current_step});
  out.push_back({"quantizer", "current_max", &hw.quantizer.current_max});
  out.push_back({"quantizer", "monitor_noise_pp", &hw.quantizer.monitor_noise_pp});
  out.push_back({"calib", "K_F", &hw.calib.K_F});
  out.push_back({"hardware", "velocity_cutoff_hz", &hw.velocity_cutoff_hz});
  out.push_back({"hardware", "plant_substep", &hw.plant_substep});
}

void add_wall(std::vector<Binding>& out, WallParams& w, bool gains) {
  if (gains) {
    out.push_back({"wall", "k", &w.k});
    out.push_back({"wall", "b", &w.b});
  }
  out.push_back({"wall", "F_offset", &w.F_offset});
}

void add_drop(std::vector<Binding>& out, DropConfig& d, bool f_loop) {
  out.push_back({"drop", "h", &d.h});
  if (f_loop) out.push_back({"drop", "f_loop", &d.f_loop});
  out.push_back({"drop", "n_falls", &d.n_falls});
  out.push_back({"drop", "fall_duration", &d.fall_duration});
  out.push_back({"drop", "release_jitter", &d.release_jitter});
}

void add_analysis(std::vector<Binding>& out, AnalysisParams& a) {
  out.push_back({"analysis", "force_min", &a.force_min});
  out.push_back({"analysis", "force_max", &a.force_max});
  out.push_back({"analysis", "min_sign_changes", &a.min_sign_changes});
  out.push_back({"analysis", "min_reentries", &a.min_reentries});
  out.push_back({"analysis", "amplitude_steps", &a.amplitude_steps});
  out.push_back({"analysis", "window_start", &a.window_start});
  out.push_back({"analysis", "window_end", &a.window_end});
  out.push_back({"analysis", "settle_band_steps", &a.settle_band_steps});
  out.push_back({"analysis", "settle_hold", &a.settle_hold});
  out.push_back({"analysis", "final_window", &a.final_window});
  out.push_back({"analysis", "episode_gap", &a.episode_gap});
  out.push_back({"analysis", "settle_until", &a.settle_until});
  out.push_back({"analysis", "encoder_step", &a.encoder_step});
}

// Non-scalar analysis settings are kept as strings while binding.
struct Extras {
  std::string regression = "force_on_position";
  int moving_average = 10;
  int min_points = 20;
};

std::vector<Binding> bindings(RunConfigFile& c, Extras& x) {
  std::vector<Binding> out;
  out.push_back({"", "experiment", static_cast<std::string*>(nullptr)});
  out.push_back({"", "seed", &c.seed});
  switch (c.kind) {
    case ExperimentKind::kDrop:
      add_hardware(out, c.drop.hw);
      add_wall(out, c.drop.wall, true);
      add_drop(out, c.drop, true);
      break;
    case ExperimentKind::kBilateral: {
      auto& b = c.bilateral;
      add_hardware(out, b.hw);
      add_wall(out, b.wall, true);
      out.push_back({"bilateral", "f_loop", &b.f_loop});
      out.push_back({"bilateral", "worldsim_rate_min", &b.worldsim_rate_min});
      out.push_back({"bilateral", "worldsim_rate_max", &b.worldsim_rate_max});
      out.push_back({"bilateral", "duration", &b.duration});
      out.push_back({"tracker", "d_lim", &b.tracker.d_lim});
      out.push_back({"tracker", "scale", &b.tracker.scale});
      out.push_back({"tracker", "hysteresis", &b.tracker.hysteresis});
      out.push_back({"channel", "base_delay", &b.channel.base_delay});
      out.push_back({"channel", "jitter_max", &b.channel.jitter_max});
      out.push_back({"channel", "drop_prob", &b.channel.drop_prob});
      out.push_back({"channel", "allow_reorder", &b.channel.allow_reorder});
      out.push_back({"channel", "seed", &b.channel.seed});
      out.push_back({"trajectory", "approach_speed", &b.trajectory.approach_speed});
      out.push_back({"trajectory", "approach_distance", &b.trajectory.approach_distance});
      out.push_back({"trajectory", "hold_start", &b.trajectory.hold_start});
      out.push_back({"trajectory", "dwell", &b.trajectory.dwell});
      out.push_back({"trajectory", "retract", &b.trajectory.retract});
      out.push_back({"trajectory", "retract_speed", &b.trajectory.retract_speed});
      out.push_back({"operator", "k_h", &b.op.k_h});
      out.push_back({"operator", "b_h", &b.op.b_h});
      out.push_back({"operator", "F_max", &b.op.F_max});
      out.push_back({"finger", "link1", &b.chain.link_lengths[0]});
      out.push_back({"finger", "link2", &b.chain.link_lengths[1]});
      out.push_back({"finger", "link3", &b.chain.link_lengths[2]});
      out.push_back({"finger", "pad_radius", &b.chain.fingerpad_radius});
      out.push_back({"scene", "object", &c.scene.object});
      out.push_back({"scene", "ahead", &c.scene.ahead});
      out.push_back({"scene", "radius", &c.scene.radius});
      out.push_back({"scene", "hand_x", &c.scene.hand_x});
      out.push_back({"scene", "hand_y", &c.scene.hand_y});
      out.push_back({"scene", "hand_z", &c.scene.hand_z});
      out.push_back({"scene", "hand_yaw", &c.scene.hand_yaw});
      break;
    }
    case ExperimentKind::kSweep:
      add_hardware(out, c.sweep.drop.hw);
      add_wall(out, c.sweep.drop.wall, false);
      add_drop(out, c.sweep.drop, false);
      out.push_back({"sweep", "frequencies", &c.sweep.frequencies});
      out.push_back({"sweep", "k", &c.sweep.k_grid});
      out.push_back({"sweep", "b", &c.sweep.b_grid});
      break;
    case ExperimentKind::kAnalyze:
      break;
  }
  add_analysis(out, c.analysis);
  out.push_back({"analysis", "moving_average", &x.moving_average});
  out.push_back({"analysis", "min_points", &x.min_points});
  out.push_back({"analysis", "regression", &x.regression});
  return out;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("not a number: '" + std::string(s) + "'");
  return v;
}

template <class I>
I parse_integer(std::string_view s) {
  I v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("not an integer: '" + std::string(s) + "'");
  return v;
}

void assign(const Target& t, std::string_view s) {
  std::visit(
      [&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          *p = parse_double(s);
        } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
          *p = parse_integer<T>(s);
        } else if constexpr (std::is_same_v<T, bool>) {
          if (s == "true" || s == "1") *p = true;
          else if (s == "false" || s == "0") *p = false;
          else throw ConfigError("expected true/false, got '" + std::string(s) + "'");
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          p->clear();
          std::size_t pos = 0;
          while (pos <= s.size()) {
            const auto comma = s.find(',', pos);
            const auto item = trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos));
            if (item.empty()) throw ConfigError("empty list item");
            p->push_back(parse_double(item));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
          }
        } else {
          if (p) *p = std::string(s);
        }
      },
      t);
}

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string render(const Target& t) {
  return std::visit(
      [](auto* p) -> std::string {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(*p);
        } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
          return std::to_string(*p);
        } else if constexpr (std::is_same_v<T, bool>) {
          return *p ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          std::string s;
          for (std::size_t i = 0; i < p->size(); ++i) s += (i ? ", " : "") + format_double((*p)[i]);
          return s;
        } else {
          return p ? *p : std::string();
        }
      },
      t);
}

Extras extras_of(const AnalysisParams& a) {
  Extras x;
  x.moving_average = static_cast<int>(a.moving_average);
  x.min_points = static_cast<int>(a.min_points);
  x.regression = a.regression == Regression::kForceOnPosition ? "force_on_position" : "position_on_force";
  return x;
}

void build_scene(RunConfigFile& c) {
  auto& b = c.bilateral;
  b.chain.validate();
  b.trajectory.start_pose = default_start_pose(b.chain);
  b.scene.hand_in_world = planar_pose(c.scene.hand_x, c.scene.hand_y, c.scene.hand_z, c.scene.hand_yaw);
  b.scene.objects.clear();
  if (c.scene.object == "none") return;
  if (!(c.scene.ahead > 0.0)) throw ConfigError("scene.ahead must be > 0");
  const Plane p = plane_ahead_of_start(b, c.scene.ahead);
  if (c.scene.object == "plane") {
    b.scene.objects.emplace_back(p);
  } else if (c.scene.object == "sphere") {
    if (!(c.scene.radius > 0.0)) throw ConfigError("scene.radius must be > 0");
    // touching point at `ahead`, centre behind it along the ray
    b.scene.objects.emplace_back(Sphere{p.point - c.scene.radius * p.normal, c.scene.radius});
  } else {
    throw ConfigError("scene.object must be plane, sphere or none");
  }
}

}  // namespace

RunConfigFile default_config(ExperimentKind kind) {
  RunConfigFile c;
  c.kind = kind;
  c.bilateral = default_bilateral_config(c.scene.ahead);
  if (kind == ExperimentKind::kBilateral) build_scene(c);
  return c;
}

std::vector<std::pair<std::string, std::string>> RunConfigFile::echo() const {
  RunConfigFile copy = *this;
  Extras x = extras_of(copy.analysis);
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment", std::string(to_string(kind)));
  for (const Binding& b : bindings(copy, x)) {
    if (b.key == "experiment") continue;
    out.emplace_back(b.name(), render(b.target));
  }
  return out;
}

RunConfigFile parse_config(std::string_view text) {
  // pass 1: collect entries
  std::map<std::string, Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(where + "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(where + "missing key");
    const std::string name = section.empty() ? key : section + "." + key;
    if (value.empty()) throw ConfigError(where + name + ": missing value");
    if (!entries.emplace(name, Entry{value, line_no}).second) {
      throw ConfigError(where + name + ": duplicate key (first set on line " +
                        std::to_string(entries.at(name).line) + ")");
    }
  }

  ExperimentKind kind = ExperimentKind::kDrop;
  if (auto it = entries.find("experiment"); it != entries.end()) {
    const auto k = parse_kind(it->second.value);
    if (!k) {
      throw ConfigError("line " + std::to_string(it->second.line) +
                        ": experiment: expected drop, bilateral, sweep or analyze");
    }
    kind = *k;
  }

  // pass 2: apply onto the defaults of that experiment
  RunConfigFile c = default_config(kind);
  Extras x = extras_of(c.analysis);
  auto binds = bindings(c, x);
  for (const auto& [name, e] : entries) {
    const auto b = std::find_if(binds.begin(), binds.end(), [&](const Binding& b) { return b.name() == name; });
    const std::string where = "line " + std::to_string(e.line) + ": " + name + ": ";
    if (b == binds.end()) {
      throw ConfigError(where + "unknown key for experiment '" + std::string(to_string(kind)) + "'");
    }
    try {
      assign(b->target, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(where + err.what());
    }
  }

  // validate; name the offending line when the message names a key from the file
  const auto locate = [&](const std::string& msg) {
    for (const auto& [name, e] : entries) {
      if (msg.find(name) != std::string::npos) return "line " + std::to_string(e.line) + ": " + msg;
    }
    return msg;
  };
  try {
    if (x.moving_average < 1) throw ConfigError("analysis.moving_average must be >= 1");
    if (x.min_points < 2) throw ConfigError("analysis.min_points must be >= 2");
    c.analysis.moving_average = static_cast<std::size_t>(x.moving_average);
    c.analysis.min_points = static_cast<std::size_t>(x.min_points);
    if (x.regression == "force_on_position") c.analysis.regression = Regression::kForceOnPosition;
    else if (x.regression == "position_on_force") c.analysis.regression = Regression::kPositionOnForce;
    else throw ConfigError("analysis.regression must be force_on_position or position_on_force");

    const Hardware* hw = nullptr;
    switch (kind) {
      case ExperimentKind::kDrop:
        c.drop.seed = c.seed;
        c.drop.validate();
        hw = &c.drop.hw;
        break;
      case ExperimentKind::kBilateral:
        c.bilateral.seed = c.seed;
        build_scene(c);
        c.bilateral.validate();
        hw = &c.bilateral.hw;
        break;
      case ExperimentKind::kSweep:
        c.sweep.seed = c.seed;
        c.sweep.validate();
        hw = &c.sweep.drop.hw;
        break;
      case ExperimentKind::kAnalyze:
        break;
    }
    // the analysis encoder step follows the quantizer unless set explicitly
    if (hw && !entries.contains("analysis.encoder_step")) c.analysis.encoder_step = hw->quantizer.encoder_step();
    c.analysis.validate();
    if (kind == ExperimentKind::kSweep) c.sweep.analysis = c.analysis;
  } catch (const ConfigError& err) {
    throw ConfigError(locate(err.what()));
  }
  return c;
}

RunConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace exhand
