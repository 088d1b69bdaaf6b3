#pragma once

#include <vector>

#include "objestures/metrics.hpp"
#include "objestures/random.hpp"

namespace objestures {

/// Knobs for a synthetic participant population. Values are illustrative,
/// not fitted to any human data.
struct SyntheticLogParams {
  int participants = 12;
  int blocks = 3;
  double rotation_error_sd = 2.0;  // degrees
  double scaling_error_sd = 0.05;  // fraction of the target side
  double mean_time = 3.0;          // seconds
  double path_rate = 20.0;         // wrist samples per second
  double wrist_step_sd = 0.01;     // meters per sample, per axis
};

/// A full counterbalanced session: participant i runs the approaches in the
/// (i mod 6)-th permutation, each approach for `blocks` generated blocks.
std::vector<TrialRecord> synthesize_trial_log(const SyntheticLogParams& params, SplitMix64& rng);

}  // namespace objestures
