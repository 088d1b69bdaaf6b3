#include "objestures/pose.hpp"

#include <algorithm>
#include <cmath>

#include "objestures/error.hpp"

namespace objestures {

void PoseThresholds::validate() const {
  if (!(curl_max > 0.0 && extend_min > 0.0 && pinch_max > 0.0 && curl_max < extend_min)) {
    throw Error(Errc::InvalidConfig, "pose thresholds must be positive with curl_max < extend_min");
  }
}

PoseSet classify(const HandJoints& hand, const PoseThresholds& th) {
  hand.at(JointName::Wrist);
  const Vec3& palm = hand.at(JointName::Palm);

  std::array<double, 5> reach{};
  for (std::size_t i = 0; i < kFingertips.size(); ++i) {
    reach[i] = distance(hand.at(kFingertips[i]), palm);
  }
  auto curled = [&](std::size_t i) { return reach[i] <= th.curl_max; };
  auto extended = [&](std::size_t i) { return reach[i] >= th.extend_min; };
  const auto fingers = {1u, 2u, 3u, 4u};  // index..pinky; 0 is the thumb

  const bool fingers_curled = std::all_of(fingers.begin(), fingers.end(), curled);
  const bool fingers_extended = std::all_of(fingers.begin(), fingers.end(), extended);

  PoseSet out;
  if (extended(0) && fingers_curled) out.insert(PoseLabel::ThumbsUp);
  if (curled(0) && fingers_curled) out.insert(PoseLabel::Fist);
  if (extended(0) && fingers_extended) out.insert(PoseLabel::Stop);
  if (extended(1) && curled(2) && curled(3) && curled(4)) out.insert(PoseLabel::IndexPoint);
  if (distance(hand.at(JointName::ThumbTip), hand.at(JointName::IndexTip)) <= th.pinch_max) {
    out.insert(PoseLabel::Pinch);
  }
  return out;
}

void fill_missing_poses(HandFrame& frame, const PoseThresholds& th) {
  for (auto* hand : {&frame.left, &frame.right}) {
    if (*hand && (*hand)->poses.empty()) (*hand)->poses = classify((*hand)->joints, th);
  }
}

}  // namespace objestures
