#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "objestures/geometry.hpp"

namespace objestures {

enum class JointName : std::uint8_t {
  Wrist,
  Palm,
  ThumbTip,
  IndexTip,
  MiddleTip,
  RingTip,
  PinkyTip,
  IndexKnuckle,
  MiddleKnuckle,
};

inline constexpr std::size_t kJointCount = 9;

inline constexpr std::array<JointName, 5> kFingertips = {
    JointName::ThumbTip, JointName::IndexTip, JointName::MiddleTip, JointName::RingTip,
    JointName::PinkyTip};

std::string_view to_string(JointName j);
std::optional<JointName> joint_from_string(std::string_view name);

enum class PoseLabel : std::uint8_t { ThumbsUp, Pinch, Fist, Stop, IndexPoint, None };

inline constexpr std::size_t kPoseLabelCount = 6;

std::string_view to_string(PoseLabel p);
std::optional<PoseLabel> pose_from_string(std::string_view name);

/// Small set of pose labels. Iteration order is the enumeration order.
class PoseSet {
 public:
  PoseSet() = default;
  PoseSet(std::initializer_list<PoseLabel> labels) {
    for (auto l : labels) insert(l);
  }

  void insert(PoseLabel p) { bits_ |= bit(p); }
  void erase(PoseLabel p) { bits_ &= static_cast<std::uint8_t>(~bit(p)); }
  bool contains(PoseLabel p) const { return (bits_ & bit(p)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<PoseLabel> labels() const;

  friend bool operator==(const PoseSet&, const PoseSet&) = default;

 private:
  static constexpr std::uint8_t bit(PoseLabel p) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(p));
  }
  std::uint8_t bits_ = 0;
};

/// The nine-joint skeleton of one hand. Absent joints are empty.
class HandJoints {
 public:
  HandJoints() = default;

  void set(JointName j, const Vec3& p) { joints_[index(j)] = p; }
  void erase(JointName j) { joints_[index(j)].reset(); }
  bool has(JointName j) const { return joints_[index(j)].has_value(); }
  const std::optional<Vec3>& get(JointName j) const { return joints_[index(j)]; }

  /// Position of `j`; throws Errc::MissingJoint naming the joint when absent.
  const Vec3& at(JointName j) const;

  /// Applies `p -> rotation(p) + offset` to every present joint.
  template <typename Fn>
  HandJoints transformed(Fn&& fn) const {
    HandJoints out;
    for (std::size_t i = 0; i < kJointCount; ++i) {
      if (joints_[i]) out.joints_[i] = fn(*joints_[i]);
    }
    return out;
  }

  friend bool operator==(const HandJoints&, const HandJoints&) = default;

 private:
  static constexpr std::size_t index(JointName j) { return static_cast<std::size_t>(j); }
  std::array<std::optional<Vec3>, kJointCount> joints_{};
};

enum class Handedness : std::uint8_t { Left, Right };

constexpr Handedness other(Handedness h) {
  return h == Handedness::Left ? Handedness::Right : Handedness::Left;
}
std::string_view to_string(Handedness h);
std::optional<Handedness> handedness_from_string(std::string_view name);

struct HandState {
  HandJoints joints;
  PoseSet poses;

  friend bool operator==(const HandState&, const HandState&) = default;
};

/// One timestamped tracking sample.
struct HandFrame {
  double t = 0.0;
  std::optional<HandState> left;
  std::optional<HandState> right;

  const std::optional<HandState>& hand(Handedness h) const {
    return h == Handedness::Left ? left : right;
  }
  std::optional<HandState>& hand(Handedness h) {
    return h == Handedness::Left ? left : right;
  }

  friend bool operator==(const HandFrame&, const HandFrame&) = default;
};

/// Sum over the five fingertips of the distance to the palm joint.
/// Throws Errc::MissingJoint naming the first absent joint.
double palm_distance_sum(const HandJoints& hand);

}  // namespace objestures
