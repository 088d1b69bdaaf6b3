#pragma once

namespace objestures {

/// Blend-factor bounds and velocity sensitivity for the adaptive EMA.
/// The blend factor is lerp(alpha_min, alpha_max, clamp(k * |raw - prev| / dt, 0, 1)).
struct AemaConfig {
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  double k = 1.0;  // seconds per unit

  /// Throws Errc::InvalidConfig unless 0 <= alpha_min <= alpha_max <= 1 and k > 0.
  void validate() const;

  static AemaConfig identity() { return {1.0, 1.0, 1.0}; }
};

struct AemaState {
  double s_prev = 0.0;
  bool initialized = false;
};

/// Adaptive exponential moving average. The first sample passes through.
/// Throws Errc::NonPositiveDt for dt <= 0.
double aema_step(AemaState& state, double raw, double dt, const AemaConfig& cfg);

/// Filter state bundled with its configuration.
class Aema {
 public:
  explicit Aema(AemaConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

  double step(double raw, double dt) { return aema_step(state_, raw, dt, cfg_); }

  /// Forces the last emitted value, e.g. when output continuity must be kept
  /// across a discontinuity in the raw signal.
  void seed(double value) { state_ = {value, true}; }
  void reset() { state_ = {}; }

  const AemaState& state() const { return state_; }
  const AemaConfig& config() const { return cfg_; }

 private:
  AemaConfig cfg_;
  AemaState state_;
};

/// Speed-dependent rotation gain: v in [v_min, v_max], v_min <= 1 < v_max
/// for the defaults; v_min == v_max == 1 is the identity.
struct GainConfig {
  double v_min = 0.5;
  double v_max = 2.0;
  double k = 0.1;  // seconds per radian

  /// Throws Errc::InvalidConfig unless 0 < v_min <= 1 <= v_max and k > 0.
  void validate() const;

  static GainConfig identity() { return {1.0, 1.0, 0.1}; }
};

/// dtheta * lerp(v_min, v_max, clamp(k * |dtheta| / dt, 0, 1)).
/// Throws Errc::NonPositiveDt for dt <= 0.
double adaptive_scale(double dtheta, double dt, const GainConfig& cfg);

}  // namespace objestures
