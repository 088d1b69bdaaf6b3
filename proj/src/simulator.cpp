#include "objestures/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "objestures/error.hpp"
#include "objestures/random.hpp"

namespace objestures {

namespace {

constexpr std::array<std::string_view, 5> kScenarioNames = {"slide", "dial", "squeeze", "free",
                                                            "binary"};

constexpr Vec3 kUp{0.0, 1.0, 0.0};

// Preamble timing, frames.
constexpr int kNeutralFrames = 10;
constexpr int kConfirmFrames = 6;
// Each leg of a lift / traverse / descend transition, frames.
constexpr int kTransitionFrames = 10;
constexpr double kLiftHeight = 0.10;

constexpr std::array<double, 5> kNeutralReach = {0.07, 0.07, 0.07, 0.07, 0.07};
constexpr std::array<double, 5> kThumbsUpReach = {0.10, 0.03, 0.03, 0.03, 0.03};
constexpr std::array<double, 5> kPointReach = {0.07, 0.10, 0.04, 0.04, 0.04};
constexpr std::array<double, 5> kGripReach = {0.06, 0.06, 0.06, 0.06, 0.06};

// Unit finger directions in the hand frame (forward, side, up).
constexpr std::array<std::array<double, 3>, 5> kFingerDirs = {{
    {0.5, 0.8660254037844386, 0.0},
    {0.9659258262890683, 0.25881904510252074, 0.0},
    {1.0, 0.0, 0.0},
    {0.9659258262890683, -0.25881904510252074, 0.0},
    {0.8660254037844386, -0.5, 0.0},
}};

Vec3 forward(double yaw) { return rotate_about_y({1.0, 0.0, 0.0}, yaw); }
Vec3 side(double yaw) { return rotate_about_y({0.0, 0.0, 1.0}, yaw); }

Vec3 lerp(const Vec3& a, const Vec3& b, double s) { return a + (b - a) * s; }

Vec3 finger_dir(std::size_t i, double yaw) {
  const auto& d = kFingerDirs[i];
  return forward(yaw) * d[0] + side(yaw) * d[1] + kUp * d[2];
}

int frames_for(double seconds, double rate) {
  return std::max(1, static_cast<int>(std::lround(seconds * rate)));
}

/// Splits `total` frames over parts with the given weights, each part >= 1.
std::vector<int> apportion(int total, const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  std::vector<int> out;
  int used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    int n = (i + 1 == weights.size())
                ? total - used
                : static_cast<int>(std::lround(total * weights[i] / sum));
    n = std::max(1, n);
    out.push_back(n);
    used += n;
  }
  return out;
}

class TraceBuilder {
 public:
  TraceBuilder(const ScenarioParams& p) : p_(p), rng_(p.seed) {
    trace_.nominal_rate = p.rate;
    confirm_palm_ = p.hand == Handedness::Right ? Vec3{-0.35, 0.85, 0.30} : Vec3{0.35, 0.85, 0.30};
  }

  void push(const HandJoints& tracked, bool thumbs_up = false) {
    HandFrame frame;
    frame.t = static_cast<double>(trace_.frames.size()) / p_.rate;
    HandState main{jitter(tracked), {}};
    HandState confirm{jitter(synthetic_hand(confirm_palm_, 0.0,
                                            thumbs_up ? kThumbsUpReach : kNeutralReach)),
                      {}};
    if (thumbs_up) confirm.poses.insert(PoseLabel::ThumbsUp);
    // Left hand is always drawn first so jitter order does not depend on handedness.
    if (p_.hand == Handedness::Right) {
      frame.left = std::move(confirm);
      frame.right = std::move(main);
    } else {
      frame.left = std::move(main);
      frame.right = std::move(confirm);
    }
    trace_.frames.push_back(std::move(frame));
  }

  void confirm_anchor(const HandJoints& tracked) {
    for (int i = 0; i < kNeutralFrames; ++i) push(tracked, false);
    for (int i = 0; i < kConfirmFrames; ++i) push(tracked, true);
  }

  std::size_t size() const { return trace_.frames.size(); }
  Trace take() { return std::move(trace_); }

 private:
  HandJoints jitter(const HandJoints& h) {
    if (p_.jitter_sigma == 0.0) return h;
    return h.transformed([&](const Vec3& v) {
      const double dx = rng_.gaussian();
      const double dy = rng_.gaussian();
      const double dz = rng_.gaussian();
      return v + Vec3{dx, dy, dz} * p_.jitter_sigma;
    });
  }

  const ScenarioParams& p_;
  SplitMix64 rng_;
  Trace trace_;
  Vec3 confirm_palm_;
};

HandJoints pointing_hand(const Vec3& tip) {
  HandJoints h = synthetic_hand(tip - finger_dir(1, 0.0) * kPointReach[1], 0.0, kPointReach);
  h.set(JointName::IndexTip, tip);
  return h;
}

Vec3 perpendicular_lift(const Vec3& axis) {
  const Vec3 unit = axis * (1.0 / norm(axis));
  Vec3 lift = kUp - unit * dot(kUp, unit);
  if (norm(lift) < 1e-6) lift = Vec3{1.0, 0.0, 0.0} - unit * unit.x;
  return lift * (1.0 / norm(lift));
}

void move_tip(TraceBuilder& b, const Vec3& from, const Vec3& to, int frames) {
  for (int k = 1; k <= frames; ++k) b.push(pointing_hand(lerp(from, to, double(k) / frames)));
}

GeneratedScenario slide(const ScenarioParams& p, TraceBuilder& b) {
  GeneratedScenario out;
  const Vec3 lift = perpendicular_lift(p.p2 - p.p1) * kLiftHeight;

  b.confirm_anchor(pointing_hand(p.p1));
  b.confirm_anchor(pointing_hand(p.p2));
  move_tip(b, p.p2, p.p2 + lift, kTransitionFrames);
  move_tip(b, p.p2 + lift, p.p1 + lift, kTransitionFrames);
  move_tip(b, p.p1 + lift, p.p1, kTransitionFrames);
  out.preamble_frames = b.size();

  const int total = frames_for(p.duration, p.rate);
  if (!p.reentry) {
    move_tip(b, p.p1, p.p2, total);
    out.expected_scalar = 1.0;
    return out;
  }
  const double r = *p.reentry;
  const auto split = apportion(total, {1.0, 1.0 - r});
  const Vec3 q = lerp(p.p1, p.p2, r);
  move_tip(b, p.p1, p.p2, split[0]);
  move_tip(b, p.p2, p.p2 + lift, kTransitionFrames);
  move_tip(b, p.p2 + lift, q + lift, kTransitionFrames);
  move_tip(b, q + lift, q, kTransitionFrames);
  move_tip(b, q, p.p2, split[1]);
  out.expected_scalar = 1.0 + (1.0 - r);
  return out;
}

HandJoints dial_hand(const Vec3& center, double yaw, double height) {
  const Vec3 knuckle = center + (forward(yaw) - forward(0.0)) * 0.01 + kUp * height;
  HandJoints h = synthetic_hand(knuckle - forward(yaw) * 0.045, yaw, kGripReach);
  h.set(JointName::MiddleKnuckle, knuckle);
  return h;
}

GeneratedScenario dial(const ScenarioParams& p, TraceBuilder& b) {
  GeneratedScenario out;
  b.confirm_anchor(dial_hand(p.grip_center, 0.0, 0.0));
  out.preamble_frames = b.size();

  std::vector<double> weights;
  for (double a : p.turns_deg) weights.push_back(std::max(std::abs(a), 1e-9));
  const auto split = apportion(frames_for(p.duration, p.rate), weights);

  double yaw = 0.0;
  double total = 0.0;
  for (std::size_t g = 0; g < p.turns_deg.size(); ++g) {
    const double turn = p.turns_deg[g] * std::numbers::pi / 180.0;
    const double start = yaw;
    for (int k = 1; k <= split[g]; ++k) {
      b.push(dial_hand(p.grip_center, start + turn * k / split[g], 0.0));
    }
    yaw = start + turn;
    total += turn;
    if (g + 1 == p.turns_deg.size()) break;

    // Re-grip: lift clear of the cup, turn the hand back, come down again.
    for (int k = 1; k <= kTransitionFrames; ++k) {
      b.push(dial_hand(p.grip_center, yaw, kLiftHeight * k / kTransitionFrames));
    }
    const double back = yaw - turn;
    for (int k = 1; k <= kTransitionFrames; ++k) {
      b.push(dial_hand(p.grip_center, yaw + (back - yaw) * k / kTransitionFrames, kLiftHeight));
    }
    yaw = back;
    for (int k = 1; k <= kTransitionFrames; ++k) {
      b.push(dial_hand(p.grip_center, yaw, kLiftHeight * (kTransitionFrames - k) / kTransitionFrames));
    }
  }
  out.expected_scalar = total;
  return out;
}

GeneratedScenario squeeze(const ScenarioParams& p, TraceBuilder& b) {
  GeneratedScenario out;
  const Vec3 palm{0.15, 0.80, 0.30};
  auto hand = [&](double scale) {
    std::array<double, 5> reach{};
    reach.fill(p.baseline_reach * scale);
    return synthetic_hand(palm, 0.0, reach);
  };
  b.confirm_anchor(hand(1.0));
  out.preamble_frames = b.size();
  const int n = frames_for(p.duration, p.rate);
  for (int k = 1; k <= n; ++k) b.push(hand(1.0 - (1.0 - p.depth) * k / n));
  out.expected_scalar = 1.0 - p.depth;
  return out;
}

HandJoints pinching_hand(const Vec3& mid) {
  const Vec3 half = side(0.0) * 0.01;
  HandJoints h = synthetic_hand(mid - forward(0.0) * 0.06, 0.0, kGripReach);
  h.set(JointName::IndexTip, mid + half);
  h.set(JointName::ThumbTip, mid - half);
  return h;
}

GeneratedScenario free_move(const ScenarioParams& p, TraceBuilder& b) {
  GeneratedScenario out;
  b.confirm_anchor(pinching_hand(p.object));
  out.preamble_frames = b.size();

  const int hold = frames_for(p.hold, p.rate);
  for (int k = 0; k < hold; ++k) b.push(pinching_hand(p.object));

  std::vector<Vec3> points{p.object};
  std::vector<double> lengths;
  for (const Vec3& w : p.waypoints) {
    lengths.push_back(std::max(distance(points.back(), p.object + w), 1e-9));
    points.push_back(p.object + w);
  }
  const auto split = apportion(frames_for(p.duration, p.rate), lengths);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    for (int k = 1; k <= split[i]; ++k) {
      b.push(pinching_hand(lerp(points[i], points[i + 1], double(k) / split[i])));
    }
  }
  for (int k = 0; k < hold; ++k) b.push(pinching_hand(points.back()));
  out.expected_position = points.back();
  return out;
}

GeneratedScenario binary_tap(const ScenarioParams& p, TraceBuilder& b) {
  GeneratedScenario out;
  const Vec3 active = p.active_point;
  const Vec3 inactive = p.active_point + p.inactive_offset;
  b.confirm_anchor(pointing_hand(active));
  b.confirm_anchor(pointing_hand(inactive));
  out.preamble_frames = b.size();

  const auto legs = apportion(frames_for(p.duration, p.rate),
                              std::vector<double>(static_cast<std::size_t>(2 * p.taps), 1.0));
  for (int tap = 0; tap < p.taps; ++tap) {
    move_tip(b, inactive, active, legs[2 * tap]);
    move_tip(b, active, inactive, legs[2 * tap + 1]);
  }
  out.expected_scalar = 0.0;
  out.expected_activations = p.taps;
  return out;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::InvalidParams, what); }

}  // namespace

std::string_view to_string(ScenarioKind k) { return kScenarioNames[static_cast<std::size_t>(k)]; }

std::optional<ScenarioKind> scenario_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kScenarioNames.size(); ++i) {
    if (kScenarioNames[i] == name) return static_cast<ScenarioKind>(i);
  }
  return std::nullopt;
}

void ScenarioParams::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) invalid("duration must be > 0");
  if (!(rate > 0.0) || !std::isfinite(rate)) invalid("rate must be > 0");
  if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma)) invalid("jitter_sigma must be >= 0");
  switch (kind) {
    case ScenarioKind::Slide:
      if (distance(p1, p2) < 1e-4) invalid("slide endpoints coincide");
      if (reentry && !(*reentry >= 0.0 && *reentry < 1.0)) invalid("reentry must be in [0, 1)");
      break;
    case ScenarioKind::Dial:
    {
      if (turns_deg.empty()) invalid("dial needs at least one turn");
      double sum = 0.0;
      for (double a : turns_deg) {
        if (!std::isfinite(a)) invalid("turn angles must be finite");
        sum += std::abs(a);
      }
      // Per-frame yaw steps must stay well under 180 degrees to be unambiguous.
      if (sum / (duration * rate) >= 90.0) invalid("dial turns too fast for the frame rate");
      break;
    }
    case ScenarioKind::Squeeze:
      if (!(baseline_reach > 0.0)) invalid("baseline_reach must be > 0");
      if (!(depth >= 0.0 && depth <= 1.0)) invalid("depth must be in [0, 1]");
      break;
    case ScenarioKind::FreeMove:
      if (waypoints.empty()) invalid("free move needs at least one waypoint");
      if (!(hold > 0.0)) invalid("hold must be > 0");
      break;
    case ScenarioKind::BinaryTap:
      if (taps < 1) invalid("taps must be >= 1");
      if (norm(inactive_offset) < 1e-4) invalid("inactive point coincides with active point");
      break;
  }
}

std::vector<double> split_turn(double total_deg, int regrips) {
  if (regrips < 0) invalid("regrips must be >= 0");
  return std::vector<double>(static_cast<std::size_t>(regrips + 1), total_deg / (regrips + 1));
}

HandJoints synthetic_hand(const Vec3& palm, double yaw, const std::array<double, 5>& reach) {
  HandJoints h;
  h.set(JointName::Palm, palm);
  h.set(JointName::Wrist, palm - forward(yaw) * 0.07 + kUp * 0.02);
  h.set(JointName::IndexKnuckle, palm + forward(yaw) * 0.04 + side(yaw) * 0.015);
  h.set(JointName::MiddleKnuckle, palm + forward(yaw) * 0.045);
  for (std::size_t i = 0; i < kFingertips.size(); ++i) {
    h.set(kFingertips[i], palm + finger_dir(i, yaw) * reach[i]);
  }
  return h;
}

GeneratedScenario generate_scenario(const ScenarioParams& params) {
  params.validate();
  TraceBuilder builder(params);
  GeneratedScenario out;
  switch (params.kind) {
    case ScenarioKind::Slide: out = slide(params, builder); break;
    case ScenarioKind::Dial: out = dial(params, builder); break;
    case ScenarioKind::Squeeze: out = squeeze(params, builder); break;
    case ScenarioKind::FreeMove: out = free_move(params, builder); break;
    case ScenarioKind::BinaryTap: out = binary_tap(params, builder); break;
  }
  out.trace = builder.take();
  return out;
}

}  // namespace objestures
