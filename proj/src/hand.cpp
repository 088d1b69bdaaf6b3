#include "objestures/hand.hpp"

#include <bit>
#include <fmt/format.h>

#include "objestures/error.hpp"

namespace objestures {

namespace {

constexpr std::array<std::string_view, kJointCount> kJointNames = {
    "wrist",    "palm",     "thumb_tip",     "index_tip",      "middle_tip",
    "ring_tip", "pinky_tip", "index_knuckle", "middle_knuckle"};

constexpr std::array<std::string_view, kPoseLabelCount> kPoseNames = {
    "ThumbsUp", "Pinch", "Fist", "Stop", "IndexPoint", "None"};

}  // namespace

std::string_view to_string(JointName j) { return kJointNames[static_cast<std::size_t>(j)]; }

std::optional<JointName> joint_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kJointCount; ++i) {
    if (kJointNames[i] == name) return static_cast<JointName>(i);
  }
  return std::nullopt;
}

std::string_view to_string(PoseLabel p) { return kPoseNames[static_cast<std::size_t>(p)]; }

std::optional<PoseLabel> pose_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kPoseLabelCount; ++i) {
    if (kPoseNames[i] == name) return static_cast<PoseLabel>(i);
  }
  return std::nullopt;
}

std::size_t PoseSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<PoseLabel> PoseSet::labels() const {
  std::vector<PoseLabel> out;
  for (std::size_t i = 0; i < kPoseLabelCount; ++i) {
    auto p = static_cast<PoseLabel>(i);
    if (contains(p)) out.push_back(p);
  }
  return out;
}

const Vec3& HandJoints::at(JointName j) const {
  const auto& p = joints_[index(j)];
  if (!p) throw Error(Errc::MissingJoint, fmt::format("joint '{}' is absent", to_string(j)));
  return *p;
}

std::string_view to_string(Handedness h) { return h == Handedness::Left ? "left" : "right"; }

std::optional<Handedness> handedness_from_string(std::string_view name) {
  if (name == "left") return Handedness::Left;
  if (name == "right") return Handedness::Right;
  return std::nullopt;
}

double palm_distance_sum(const HandJoints& hand) {
  const Vec3& palm = hand.at(JointName::Palm);
  double sum = 0.0;
  for (JointName tip : kFingertips) sum += distance(hand.at(tip), palm);
  return sum;
}

}  // namespace objestures
