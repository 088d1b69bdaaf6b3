#include "objestures/study.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "objestures/error.hpp"
#include "objestures/trace.hpp"

namespace objestures {

std::string_view to_string(Task t) { return t == Task::Scaling ? "Scaling" : "Rotation"; }
std::string_view to_string(Distance d) { return d == Distance::Near ? "Near" : "Far"; }

std::optional<Task> task_from_string(std::string_view s) {
  if (s == "Scaling") return Task::Scaling;
  if (s == "Rotation") return Task::Rotation;
  return std::nullopt;
}

std::optional<Distance> distance_from_string(std::string_view s) {
  if (s == "Near") return Distance::Near;
  if (s == "Far") return Distance::Far;
  return std::nullopt;
}

std::string type_code(Task t, Distance d) {
  return fmt::format("{}{}", d == Distance::Near ? 'N' : 'F', t == Task::Scaling ? 'S' : 'R');
}

const Region& region_for(Distance d) { return d == Distance::Near ? kNearRegion : kFarRegion; }

TaskSpec sample_target(Task task, Distance distance, SplitMix64& rng, const TargetRanges& ranges) {
  TaskSpec spec;
  spec.task = task;
  spec.distance = distance;
  if (task == Task::Rotation) {
    const double magnitude = rng.uniform(ranges.rotation_min_deg, ranges.rotation_max_deg);
    spec.target = rng.coin() ? magnitude : -magnitude;
  } else {
    spec.target = rng.coin() ? rng.uniform(ranges.scale_down_min, ranges.scale_down_max)
                             : rng.uniform(ranges.scale_up_min, ranges.scale_up_max);
  }
  const Region& region = region_for(distance);
  const double h = region.half_extent;
  const double x = rng.uniform(-h, h);
  const double y = rng.uniform(-h, h);
  const double z = rng.uniform(-h, h);
  spec.cube_center = region.center + Vec3{x, y, z};
  return spec;
}

TrialBlock gen_block(SplitMix64& rng, const TargetRanges& ranges) {
  struct Type {
    Task task;
    Distance distance;
  };
  std::array<Type, 4> order = {{{Task::Scaling, Distance::Near},
                                {Task::Scaling, Distance::Far},
                                {Task::Rotation, Distance::Near},
                                {Task::Rotation, Distance::Far}}};
  rng.shuffle(std::span<Type>(order));

  TrialBlock block;
  for (const Type& type : order) {
    for (int rep = 0; rep < 2; ++rep) {
      block.trials.push_back(sample_target(type.task, type.distance, rng, ranges));
    }
  }
  return block;
}

std::vector<TrialBlock> gen_session(int blocks, SplitMix64& rng, const TargetRanges& ranges) {
  if (blocks < 0) throw Error(Errc::InvalidParams, "block count must be >= 0");
  std::vector<TrialBlock> out;
  out.reserve(static_cast<std::size_t>(blocks));
  for (int i = 0; i < blocks; ++i) out.push_back(gen_block(rng, ranges));
  return out;
}

bool satisfies_block_invariant(const TrialBlock& block) {
  if (block.trials.size() != 8) return false;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 8; i += 2) {
    const auto& a = block.trials[i];
    const auto& b = block.trials[i + 1];
    if (a.task != b.task || a.distance != b.distance) return false;
    if (!seen.insert(type_code(a.task, a.distance)).second) return false;
  }
  return seen.size() == 4;
}

std::string block_trial_line(int block, int trial, const TaskSpec& spec) {
  return fmt::format(
      R"({{"block":{},"trial":{},"task":"{}","distance":"{}","target":{},"center":[{},{},{}]}})",
      block, trial, to_string(spec.task), to_string(spec.distance), format_decimal(spec.target),
      format_decimal(spec.cube_center.x), format_decimal(spec.cube_center.y),
      format_decimal(spec.cube_center.z));
}

}  // namespace objestures
