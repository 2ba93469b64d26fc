#include "exhand/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exhand/error.hpp"

namespace exhand {

void PlantParams::validate() const {
  if (!(m > 0.0)) throw ConfigError("plant.m must be > 0");
  if (!std::isfinite(g)) throw ConfigError("plant.g must be finite");
  if (!(c_visc >= 0.0)) throw ConfigError("plant.c_visc must be >= 0");
  if (!(F_coulomb >= 0.0)) throw ConfigError("plant.F_coulomb must be >= 0");
  if (!(m_reflected >= 0.0)) throw ConfigError("plant.m_reflected must be >= 0");
}

void QuantizerSpec::validate() const {
  if (encoder_counts_per_rev <= 0) throw ConfigError("quantizer.encoder_counts_per_rev must be > 0");
  if (!(pulley_radius > 0.0)) throw ConfigError("quantizer.pulley_radius must be > 0");
  if (!(current_step > 0.0)) throw ConfigError("quantizer.current_step must be > 0");
  if (!(current_max > 0.0)) throw ConfigError("quantizer.current_max must be > 0");
  if (!(monitor_noise_pp >= 0.0)) throw ConfigError("quantizer.monitor_noise_pp must be >= 0");
}

void ForceCalib::validate() const {
  if (!(K_F > 0.0)) throw ConfigError("calib.K_F must be > 0");
}

PlantState step_plant(const PlantState& s, double F_cable, const PlantParams& p, double dt,
                      double F_ext) {
  if (F_cable < 0.0) throw std::invalid_argument("step_plant: cable force must be >= 0");
  const double M = p.total_mass();
  const double drive = p.m * p.g + F_ext - F_cable - p.c_visc * s.v;

  PlantState out;
  if (s.v == 0.0) {
    // static friction holds unless the drive exceeds it
    if (std::abs(drive) <= p.F_coulomb) {
      out.v = 0.0;
    } else {
      const double net = drive - std::copysign(p.F_coulomb, drive);
      out.v = net / M * dt;
    }
  } else {
    const double a = (drive - std::copysign(p.F_coulomb, s.v)) / M;
    out.v = s.v + a * dt;
    const double v_free = s.v + drive / M * dt;
    if (std::signbit(out.v) != std::signbit(s.v) && std::signbit(v_free) == std::signbit(s.v)) {
      out.v = 0.0;
    }
  }
  out.x = s.x + out.v * dt;
  return out;
}

double read_encoder(double x, const QuantizerSpec& spec) {
  const double step = spec.encoder_step();
  double n = std::floor(x / step);
  // x/step can land an ulp off an integer; settle on the exact floor
  if (n * step > x) n -= 1.0;
  if ((n + 1.0) * step <= x) n += 1.0;
  return n * step;
}

double quantize_nearest(double x, double step) { return std::round(x / step) * step; }

AppliedCurrent apply_current(double I_des, const QuantizerSpec& spec, const ForceCalib& calib) {
  const double I = std::clamp(quantize_nearest(I_des, spec.current_step), 0.0, spec.current_max);
  return {I + 0.0, calib.K_F * I + 0.0};
}

double monitor_force(double I_applied, const QuantizerSpec& spec, const ForceCalib& calib,
                     Rng& rng) {
  const double half = 0.5 * spec.monitor_noise_pp;
  const double u = half > 0.0 ? rng.uniform(-half, half) : 0.0;
  const double top = std::floor(spec.current_max / spec.current_step) * spec.current_step;
  const double I = std::clamp(quantize_nearest(I_applied + u, spec.current_step), 0.0, top);
  return calib.K_F * I + 0.0;  // no -0 from the clamp
}

}  // namespace exhand
