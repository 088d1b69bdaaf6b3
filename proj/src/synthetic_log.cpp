#include "objestures/synthetic_log.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "objestures/error.hpp"

namespace objestures {

namespace {

std::vector<Vec3> wrist_walk(const Vec3& start, int samples, double step_sd, SplitMix64& rng) {
  std::vector<Vec3> path{start};
  for (int i = 1; i < samples; ++i) {
    const double dx = rng.gaussian();
    const double dy = rng.gaussian();
    const double dz = rng.gaussian();
    path.push_back(path.back() + Vec3{dx, dy, dz} * step_sd);
  }
  return path;
}

}  // namespace

std::vector<TrialRecord> synthesize_trial_log(const SyntheticLogParams& p, SplitMix64& rng) {
  if (p.participants < 1 || p.blocks < 1 || !(p.path_rate > 0.0) || !(p.mean_time > 0.0)) {
    throw Error(Errc::InvalidParams, "synthetic log needs participants, blocks, rates > 0");
  }
  std::array<Approach, 3> base = {Approach::Hands, Approach::Obj, Approach::NObj};
  std::vector<std::array<Approach, 3>> orders;
  do {
    orders.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  std::vector<TrialRecord> out;
  for (int who = 0; who < p.participants; ++who) {
    const auto& order = orders[static_cast<std::size_t>(who) % orders.size()];
    for (Approach approach : order) {
      double clock = 0.0;
      for (int b = 1; b <= p.blocks; ++b) {
        const TrialBlock block = gen_block(rng);
        for (std::size_t j = 0; j < block.trials.size(); ++j) {
          const TaskSpec& spec = block.trials[j];
          TrialRecord r;
          r.participant = fmt::format("P{:02}", who + 1);
          r.approach = approach;
          r.task = spec.task;
          r.distance = spec.distance;
          r.block = b;
          r.trial = static_cast<int>(j) + 1;
          r.target = spec.target;
          r.manipulated = spec.task == Task::Rotation
                              ? spec.target + rng.gaussian() * p.rotation_error_sd
                              : spec.target * (1.0 + rng.gaussian() * p.scaling_error_sd);
          const double duration = p.mean_time * std::exp(0.4 * rng.gaussian());
          r.t_appear = clock;
          r.t_release = clock + duration;
          clock = r.t_release + 1.0;
          const int samples = std::max(2, static_cast<int>(std::lround(duration * p.path_rate)));
          r.left_wrist_path = wrist_walk({-0.25, 0.85, 0.30}, samples, p.wrist_step_sd, rng);
          r.right_wrist_path = wrist_walk({0.25, 0.85, 0.30}, samples, p.wrist_step_sd, rng);
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

}  // namespace objestures
