#pragma once

#include "objestures/hand.hpp"

namespace objestures {

/// Fingertip-to-palm distance bands, meters.
struct PoseThresholds {
  double curl_max = 0.05;    // at or below: finger curled
  double extend_min = 0.09;  // at or above: finger extended
  double pinch_max = 0.02;   // thumb_tip to index_tip

  void validate() const;
};

/// Distance-only pose heuristics over the nine-joint skeleton. Requires
/// wrist, palm and the five fingertips; throws Errc::MissingJoint otherwise.
PoseSet classify(const HandJoints& hand, const PoseThresholds& th = {});

/// Fills the pose set of every hand in `frame` whose set is empty.
void fill_missing_poses(HandFrame& frame, const PoseThresholds& th = {});

}  // namespace objestures
