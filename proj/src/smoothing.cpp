#include "objestures/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "objestures/error.hpp"

namespace objestures {

namespace {

double lerp_clamped(double lo, double hi, double t) {
  return std::lerp(lo, hi, std::clamp(t, 0.0, 1.0));
}

void require_positive_dt(double dt) {
  if (!(dt > 0.0)) throw Error(Errc::NonPositiveDt, fmt::format("dt={} must be positive", dt));
}

}  // namespace

void AemaConfig::validate() const {
  if (!(0.0 <= alpha_min && alpha_min <= alpha_max && alpha_max <= 1.0)) {
    throw Error(Errc::InvalidConfig, "aema requires 0 <= alpha_min <= alpha_max <= 1");
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(Errc::InvalidConfig, "aema.k must be > 0");
}

double aema_step(AemaState& state, double raw, double dt, const AemaConfig& cfg) {
  require_positive_dt(dt);
  if (!state.initialized) {
    state = {raw, true};
    return raw;
  }
  const double rate = std::abs(raw - state.s_prev) / dt;
  const double alpha =
      std::clamp(lerp_clamped(cfg.alpha_min, cfg.alpha_max, cfg.k * rate), cfg.alpha_min,
                 cfg.alpha_max);
  const double out = alpha * raw + (1.0 - alpha) * state.s_prev;
  // Rounding can push the blend a hair outside [s_prev, raw].
  state.s_prev = std::clamp(out, std::min(raw, state.s_prev), std::max(raw, state.s_prev));
  return state.s_prev;
}

void GainConfig::validate() const {
  if (!(0.0 < v_min && v_min <= 1.0 && 1.0 <= v_max)) {
    throw Error(Errc::InvalidConfig, "gain requires 0 < v_min <= 1 <= v_max");
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(Errc::InvalidConfig, "gain.k must be > 0");
}

double adaptive_scale(double dtheta, double dt, const GainConfig& cfg) {
  require_positive_dt(dt);
  const double v = lerp_clamped(cfg.v_min, cfg.v_max, cfg.k * std::abs(dtheta) / dt);
  return dtheta * v;
}

}  // namespace objestures
