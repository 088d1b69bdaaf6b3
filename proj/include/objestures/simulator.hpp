#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "objestures/hand.hpp"
#include "objestures/trace.hpp"

namespace objestures {

enum class ScenarioKind { Slide, Dial, Squeeze, FreeMove, BinaryTap };

std::string_view to_string(ScenarioKind k);
std::optional<ScenarioKind> scenario_from_string(std::string_view name);

/// Parameters of a scripted synthetic trace. Every trace starts with a setup
/// preamble: for each anchor the tracked hand rests on it while the other
/// hand goes neutral, then shows a labelled thumbs-up.
///
/// `duration` covers the scripted motion only (slide passes, dial turns,
/// squeeze ramp, free-move drag, taps); preamble, re-grip and hold frames
/// are added on top. Timestamps are frame_index / rate.
struct ScenarioParams {
  ScenarioKind kind = ScenarioKind::Slide;
  double duration = 1.0;
  double rate = kDefaultFrameRate;
  double jitter_sigma = 0.0;  // meters, per axis, every joint of every hand
  std::uint64_t seed = 0;
  Handedness hand = Handedness::Right;

  // Slide: a 26 cm book edge by default.
  Vec3 p1{-0.13, 0.75, 0.35};
  Vec3 p2{0.13, 0.75, 0.35};
  std::optional<double> reentry;  // lift after the first pass, re-enter at this s

  // Dial: one entry per grip, degrees, counterclockwise seen from above positive.
  Vec3 grip_center{0.20, 0.80, 0.35};
  std::vector<double> turns_deg{90.0};

  // Squeeze: fingertip reach shrinks from baseline_reach to depth * baseline_reach.
  double baseline_reach = 0.08;
  double depth = 0.5;

  // FreeMove: dwell, drag through waypoints (offsets from the start), dwell.
  Vec3 object{0.0, 0.78, 0.35};
  std::vector<Vec3> waypoints{{0.30, 0.0, 0.0}};
  double hold = 3.5;  // seconds held still before and after the drag

  // BinaryTap: alternate between the inactive and the active point.
  Vec3 active_point{-0.10, 0.76, 0.30};
  Vec3 inactive_offset{0.0, 0.03, 0.0};
  int taps = 3;

  /// Throws Errc::InvalidParams.
  void validate() const;
};

/// Splits a total turn into `regrips + 1` equal grips.
std::vector<double> split_turn(double total_deg, int regrips);

struct GeneratedScenario {
  Trace trace;
  std::size_t preamble_frames = 0;  // frames before the scripted motion starts
  /// Slide: final continuous-mode value (absolute mode always ends at 1).
  /// Dial: total turn in radians. Squeeze: final intensity. BinaryTap: 0
  /// (ends inactive). FreeMove: unused.
  double expected_scalar = 0.0;
  Vec3 expected_position;  // FreeMove final object position
  int expected_activations = 0;  // BinaryTap
};

/// Deterministic in (params, seed); jitter_sigma == 0 follows the exact
/// analytic path.
GeneratedScenario generate_scenario(const ScenarioParams& params);

inline Trace gen_trace(const ScenarioParams& params) { return generate_scenario(params).trace; }

/// Builds a plausible nine-joint hand: palm at `palm`, fingers pointing along
/// yaw `yaw` (radians about +Y from +X), fingertip reaches in meters
/// (thumb, index, middle, ring, pinky).
HandJoints synthetic_hand(const Vec3& palm, double yaw, const std::array<double, 5>& reach);

}  // namespace objestures
