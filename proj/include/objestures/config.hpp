#pragma once

#include <iosfwd>
#include <string>

#include "objestures/hand.hpp"
#include "objestures/pose.hpp"
#include "objestures/smoothing.hpp"

namespace objestures {

enum class BinaryMode { ObjectAnchored, GestureLabeled };

struct SetupConfig {
  PoseLabel confirm = PoseLabel::ThumbsUp;
  double fallback_dt = 1.0 / 60.0;  // used before the first timestamp pair
};

struct BinaryConfig {
  BinaryMode mode = BinaryMode::ObjectAnchored;
  PoseLabel label = PoseLabel::Pinch;  // GestureLabeled only
  double threshold = 0.01;
  JointName joint = JointName::IndexTip;
  Handedness hand = Handedness::Right;
};

struct LinearConfig {
  double threshold = 0.03;
  bool continuous = true;
  JointName joint = JointName::IndexTip;
  Handedness hand = Handedness::Right;
};

struct RotationalConfig {
  double engage_radius = 0.05;
  Handedness hand = Handedness::Right;
};

struct NonlinearConfig {
  Handedness hand = Handedness::Right;
};

struct FreeConfig {
  double tolerance = 0.02;
  double dwell = 3.0;
  double stationary_eps = 0.005;
  JointName joint_a = JointName::IndexTip;
  JointName joint_b = JointName::ThumbTip;
  Handedness hand = Handedness::Right;
};

struct EngineConfig {
  SetupConfig setup;
  BinaryConfig binary;
  LinearConfig linear;
  RotationalConfig rotational;
  NonlinearConfig nonlinear;
  FreeConfig free;
  AemaConfig aema;
  GainConfig gain;
  PoseThresholds pose;

  /// Throws Errc::InvalidConfig on any out-of-range value.
  void validate() const;
};

/// Flat "dotted.key = value" text, one per line; '#' starts a comment line.
/// Unknown keys and malformed values throw Errc::InvalidConfig with the line.
EngineConfig parse_config(std::istream& in);
EngineConfig load_config(const std::string& path);

/// Applies a single key/value pair on top of `cfg`.
void apply_config_value(EngineConfig& cfg, const std::string& key, const std::string& value,
                        std::size_t line = 0);

}  // namespace objestures
