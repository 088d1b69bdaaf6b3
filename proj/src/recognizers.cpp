#include "objestures/recognizers.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "objestures/error.hpp"
#include "objestures/geometry.hpp"

namespace objestures {

namespace {

constexpr double kMinAnchorSeparation = 1e-4;  // meters
constexpr double kValueChangeEpsilon = 1e-6;
constexpr double kTimeEpsilon = 1e-9;  // seconds, absorbs timestamp rounding

constexpr std::array<std::string_view, 5> kKindNames = {"binary", "linear", "rotational",
                                                        "nonlinear", "free"};

constexpr std::array<std::string_view, 6> kEventNames = {
    "SetupConfirmed", "Activated", "Deactivated", "Engaged", "Disengaged", "ValueChanged"};

void report_scalar(double value, double& last_reported, std::vector<RecognizerEvent>& events) {
  if (std::abs(value - last_reported) > kValueChangeEpsilon) {
    last_reported = value;
    events.push_back({EventKind::ValueChanged, value});
  }
}

}  // namespace

std::string_view to_string(RecognizerKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<RecognizerKind> recognizer_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<RecognizerKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(EventKind k) { return kEventNames[static_cast<std::size_t>(k)]; }

// ---------------------------------------------------------------------------
// Recognizer

Recognizer::Recognizer(const EngineConfig& cfg, Handedness hand) : cfg_(cfg), hand_(hand) {
  cfg_.validate();
}

Phase Recognizer::phase() const {
  if (!ready_) return {PhaseKind::Setup, progress_};
  return {engaged() ? PhaseKind::Engaged : PhaseKind::Ready, progress_};
}

double Recognizer::advance_clock(double t) {
  const double dt = last_t_ ? t - *last_t_ : cfg_.setup.fallback_dt;
  if (!(dt > 0.0)) {
    throw Error(Errc::NonPositiveDt, fmt::format("frame at t={} is not after t={}", t, *last_t_));
  }
  last_t_ = t;
  return dt;
}

StepResult Recognizer::feed(const HandFrame& frame) {
  return ready_ ? step(frame) : setup_step(frame);
}

StepResult Recognizer::setup_step(const HandFrame& frame) {
  if (ready_) throw Error(Errc::WrongPhase, "setup_step called after setup completed");
  advance_clock(frame.t);

  StepResult result;
  const auto& confirming = frame.hand(other(hand_));
  const bool held = confirming && confirming->poses.contains(cfg_.setup.confirm);
  const bool rising = held && !confirm_was_held_;
  confirm_was_held_ = held;

  if (rising) {
    const auto& tracked = frame.hand(hand_);
    if (!tracked) {
      throw Error(Errc::MissingJoint,
                  fmt::format("tracked {} hand absent at confirmation", to_string(hand_)));
    }
    const std::size_t index = progress_;
    capture_anchor(index, *tracked);
    ++progress_;
    if (progress_ == anchors_required()) {
      ready_ = true;
      on_ready();
    }
    result.events.push_back({EventKind::SetupConfirmed, static_cast<double>(index)});
  }
  result.phase = phase();
  result.value = value();
  return result;
}

StepResult Recognizer::step(const HandFrame& frame) {
  if (!ready_) throw Error(Errc::WrongPhase, "step called before setup completed");
  const double dt = advance_clock(frame.t);

  StepResult result;
  const auto& tracked = frame.hand(hand_);
  ready_step(frame, tracked ? &*tracked : nullptr, dt, result.events);
  result.phase = phase();
  result.value = value();
  return result;
}

void Recognizer::reset() {
  ready_ = false;
  progress_ = 0;
  confirm_was_held_ = false;
  last_t_.reset();
  clear();
  if (anchors_required() == 0) ready_ = true;
}

// ---------------------------------------------------------------------------
// Binary

BinaryRecognizer::BinaryRecognizer(const EngineConfig& cfg)
    : Recognizer(cfg, cfg.binary.hand), bcfg_(cfg.binary) {
  if (anchors_required() == 0) mark_ready();
}

std::size_t BinaryRecognizer::anchors_required() const {
  return bcfg_.mode == BinaryMode::ObjectAnchored ? 2 : 0;
}

void BinaryRecognizer::capture_anchor(std::size_t index, const HandState& tracked) {
  const Vec3& p = tracked.joints.at(bcfg_.joint);
  if (index == 0) {
    active_point_ = p;
    return;
  }
  if (distance(p, *active_point_) < kMinAnchorSeparation) {
    throw Error(Errc::DegenerateAnchors, "active and inactive points coincide");
  }
  inactive_point_ = p;
}

void BinaryRecognizer::ready_step(const HandFrame&, const HandState* tracked, double,
                                  std::vector<RecognizerEvent>& events) {
  bool next = active_;
  if (bcfg_.mode == BinaryMode::GestureLabeled) {
    next = tracked && tracked->poses.contains(bcfg_.label);
  } else {
    if (!tracked) return;
    const Vec3& p = tracked->joints.at(bcfg_.joint);
    const double to_active = distance(p, *active_point_);
    const double to_inactive = distance(p, *inactive_point_);
    // Overlapping zones resolve to the nearer anchor; between zones the state holds.
    if (to_active <= bcfg_.threshold && to_active <= to_inactive) {
      next = true;
    } else if (to_inactive <= bcfg_.threshold) {
      next = false;
    }
  }
  if (next != active_) {
    active_ = next;
    events.push_back({active_ ? EventKind::Activated : EventKind::Deactivated, value()});
  }
}

void BinaryRecognizer::clear() {
  active_point_.reset();
  inactive_point_.reset();
  active_ = false;
}

// ---------------------------------------------------------------------------
// Linear

LinearRecognizer::LinearRecognizer(const EngineConfig& cfg)
    : Recognizer(cfg, cfg.linear.hand), lcfg_(cfg.linear), filter_(cfg.aema) {}

void LinearRecognizer::capture_anchor(std::size_t index, const HandState& tracked) {
  const Vec3& p = tracked.joints.at(lcfg_.joint);
  if (index == 0) {
    p1_ = p;
    return;
  }
  if (distance(p, *p1_) < kMinAnchorSeparation) {
    throw Error(Errc::DegenerateAnchors, "segment endpoints coincide");
  }
  p2_ = p;
}

void LinearRecognizer::ready_step(const HandFrame&, const HandState* tracked, double dt,
                                  std::vector<RecognizerEvent>& events) {
  if (!tracked) return;
  const auto [s, d] = project_to_segment(tracked->joints.at(lcfg_.joint), *p1_, *p2_);

  if (d > lcfg_.threshold) {
    if (engaged_) {
      engaged_ = false;
      events.push_back({EventKind::Disengaged, value_});
    }
    return;
  }

  if (!engaged_) {
    engaged_ = true;
    offset_ = lcfg_.continuous ? value_ - s : 0.0;
    events.push_back({EventKind::Engaged, value_});
  }
  // s is already within [0, 1]; only the continuous offset can leave that range.
  const double raw = offset_ + s;
  value_ = filter_.step(raw, dt);
  report_scalar(value_, last_reported_, events);
}

void LinearRecognizer::clear() {
  p1_.reset();
  p2_.reset();
  filter_.reset();
  value_ = last_reported_ = offset_ = 0.0;
  engaged_ = false;
}

// ---------------------------------------------------------------------------
// Rotational

namespace {

Vec3 tracking_direction(const HandState& hand) {
  return hand.joints.at(JointName::MiddleKnuckle) - hand.joints.at(JointName::Wrist);
}

Vec3 require_horizontal(const Vec3& dir) {
  const Vec3 h = horizontal(dir);
  if (norm(h) < 1e-9) throw Error(Errc::VerticalDirection, "hand direction is vertical");
  return h;
}

}  // namespace

RotationalRecognizer::RotationalRecognizer(const EngineConfig& cfg)
    : Recognizer(cfg, cfg.rotational.hand),
      rcfg_(cfg.rotational),
      gain_(cfg.gain),
      filter_(cfg.aema) {}

void RotationalRecognizer::capture_anchor(std::size_t, const HandState& tracked) {
  const Vec3 dir = require_horizontal(tracking_direction(tracked));
  grip_point_ = tracked.joints.at(JointName::MiddleKnuckle);
  ref_dir_ = prev_dir_ = dir;
}

void RotationalRecognizer::on_ready() {
  engaged_ = true;
  accumulated_ = theta_ = theta_at_departure_ = last_reported_ = 0.0;
  filter_.seed(0.0);
}

void RotationalRecognizer::ready_step(const HandFrame&, const HandState* tracked, double dt,
                                      std::vector<RecognizerEvent>& events) {
  if (!tracked) return;
  const Vec3& knuckle = tracked->joints.at(JointName::MiddleKnuckle);
  const Vec3 dir = tracking_direction(*tracked);
  const bool inside = distance(knuckle, *grip_point_) <= rcfg_.engage_radius;

  if (engaged_ && !inside) {
    engaged_ = false;
    theta_at_departure_ = theta_;
    events.push_back({EventKind::Disengaged, theta_});
    return;
  }
  if (!engaged_) {
    if (!inside) return;
    engaged_ = true;
    ref_dir_ = prev_dir_ = require_horizontal(dir);
    accumulated_ = theta_at_departure_;
    events.push_back({EventKind::Engaged, theta_});
    return;
  }

  const double raw_delta = signed_yaw_delta(prev_dir_, dir);
  prev_dir_ = horizontal(dir);
  accumulated_ += adaptive_scale(raw_delta, dt, gain_);
  theta_ = filter_.step(accumulated_, dt);
  report_scalar(theta_, last_reported_, events);
}

void RotationalRecognizer::clear() {
  grip_point_.reset();
  ref_dir_ = prev_dir_ = {};
  accumulated_ = theta_ = theta_at_departure_ = last_reported_ = 0.0;
  filter_.reset();
  engaged_ = false;
}

// ---------------------------------------------------------------------------
// Nonlinear

NonlinearRecognizer::NonlinearRecognizer(const EngineConfig& cfg)
    : Recognizer(cfg, cfg.nonlinear.hand), filter_(cfg.aema) {}

void NonlinearRecognizer::capture_anchor(std::size_t, const HandState& tracked) {
  const double d = palm_distance_sum(tracked.joints);
  if (d < kMinAnchorSeparation) {
    throw Error(Errc::DegenerateAnchors, "baseline fingertip distance is zero");
  }
  baseline_ = d;
}

void NonlinearRecognizer::on_ready() {
  intensity_ = last_reported_ = 0.0;
  filter_.seed(0.0);
}

void NonlinearRecognizer::ready_step(const HandFrame&, const HandState* tracked, double dt,
                                     std::vector<RecognizerEvent>& events) {
  if (!tracked) return;
  const double raw = std::clamp(1.0 - palm_distance_sum(tracked->joints) / baseline_, 0.0, 1.0);
  intensity_ = filter_.step(raw, dt);
  report_scalar(intensity_, last_reported_, events);
}

void NonlinearRecognizer::clear() {
  baseline_ = intensity_ = last_reported_ = 0.0;
  filter_.reset();
}

// ---------------------------------------------------------------------------
// Free

FreeRecognizer::FreeRecognizer(const EngineConfig& cfg)
    : Recognizer(cfg, cfg.free.hand), fcfg_(cfg.free) {}

Vec3 FreeRecognizer::contact_midpoint(const HandState& tracked) const {
  return midpoint(tracked.joints.at(fcfg_.joint_a), tracked.joints.at(fcfg_.joint_b));
}

void FreeRecognizer::capture_anchor(std::size_t, const HandState& tracked) {
  object_ = last_reported_ = contact_midpoint(tracked);
}

void FreeRecognizer::ready_step(const HandFrame& frame, const HandState* tracked, double,
                                std::vector<RecognizerEvent>& events) {
  if (!tracked) return;
  const Vec3 m = contact_midpoint(*tracked);
  const double t = frame.t;

  if (!engaged_) {
    const bool in_zone = distance(m, object_) <= fcfg_.tolerance;
    if (needs_exit_) {
      if (!in_zone) needs_exit_ = false;
    } else if (in_zone) {
      if (!zone_since_) zone_since_ = t;
      dwell_timer_ = std::min(t - *zone_since_, fcfg_.dwell);
      if (t - *zone_since_ >= fcfg_.dwell - kTimeEpsilon) {
        engaged_ = true;
        zone_since_.reset();
        still_since_.reset();
        dwell_timer_ = stationary_timer_ = 0.0;
        object_ = last_reported_ = m;
        events.push_back({EventKind::Engaged, object_});
      }
    } else {
      zone_since_.reset();
      dwell_timer_ = 0.0;
    }
    prev_midpoint_ = m;
    prev_t_ = t;
    return;
  }

  object_ = m;
  if (distance(m, prev_midpoint_) < fcfg_.stationary_eps) {
    if (!still_since_) still_since_ = prev_t_;
    stationary_timer_ = std::min(t - *still_since_, fcfg_.dwell);
  } else {
    still_since_.reset();
    stationary_timer_ = 0.0;
  }
  prev_midpoint_ = m;
  prev_t_ = t;

  if (distance(object_, last_reported_) > kValueChangeEpsilon) {
    last_reported_ = object_;
    events.push_back({EventKind::ValueChanged, object_});
  }
  if (still_since_ && t - *still_since_ >= fcfg_.dwell - kTimeEpsilon) {
    engaged_ = false;
    needs_exit_ = true;
    still_since_.reset();
    stationary_timer_ = 0.0;
    events.push_back({EventKind::Disengaged, object_});
  }
}

void FreeRecognizer::clear() {
  object_ = last_reported_ = prev_midpoint_ = {};
  engaged_ = needs_exit_ = false;
  zone_since_.reset();
  still_since_.reset();
  prev_t_ = dwell_timer_ = stationary_timer_ = 0.0;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Recognizer> make_recognizer(RecognizerKind kind, const EngineConfig& cfg) {
  switch (kind) {
    case RecognizerKind::Binary: return std::make_unique<BinaryRecognizer>(cfg);
    case RecognizerKind::Linear: return std::make_unique<LinearRecognizer>(cfg);
    case RecognizerKind::Rotational: return std::make_unique<RotationalRecognizer>(cfg);
    case RecognizerKind::Nonlinear: return std::make_unique<NonlinearRecognizer>(cfg);
    case RecognizerKind::Free: return std::make_unique<FreeRecognizer>(cfg);
  }
  throw Error(Errc::InvalidParams, "unknown recognizer kind");
}

}  // namespace objestures
