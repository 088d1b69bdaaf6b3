#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "objestures/geometry.hpp"
#include "objestures/random.hpp"

namespace objestures {

enum class Task { Scaling, Rotation };
enum class Distance { Near, Far };

std::string_view to_string(Task t);
std::string_view to_string(Distance d);
std::optional<Task> task_from_string(std::string_view s);
std::optional<Distance> distance_from_string(std::string_view s);

/// Two-letter trial type code: NS, FS, NR, FR.
std::string type_code(Task t, Distance d);

inline constexpr double kCubeStartSide = 0.15;  // meters

struct TargetRanges {
  double rotation_min_deg = 7.5;
  double rotation_max_deg = 45.0;
  double scale_down_min = 0.05;
  double scale_down_max = 0.12;
  double scale_up_min = 0.18;
  double scale_up_max = 0.25;
};

/// Axis-aligned cube of candidate cube centers. The headset sits at the
/// world origin facing +Z; heights are above the floor.
struct Region {
  Vec3 center;
  double half_extent;
};

inline constexpr Region kNearRegion{{0.0, 0.95, 0.40}, 0.10};
inline constexpr Region kFarRegion{{0.0, 0.95, 1.40}, 0.35};

const Region& region_for(Distance d);

struct TaskSpec {
  Task task = Task::Rotation;
  Distance distance = Distance::Near;
  double target = 0.0;  // signed degrees (Rotation) or side length in meters (Scaling)
  double cube_start_side = kCubeStartSide;
  Vec3 cube_center;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

/// Rotation: |target| uniform in [7.5, 45] deg with a fair sign. Scaling: a
/// fair coin picks the scale-down or scale-up range, then uniform within.
/// Center uniform inside the Near or Far region.
TaskSpec sample_target(Task task, Distance distance, SplitMix64& rng,
                       const TargetRanges& ranges = {});

/// Eight trials: the four task x distance types in a shuffled order, each
/// type as one consecutive pair.
struct TrialBlock {
  std::vector<TaskSpec> trials;
};

TrialBlock gen_block(SplitMix64& rng, const TargetRanges& ranges = {});
std::vector<TrialBlock> gen_session(int blocks, SplitMix64& rng, const TargetRanges& ranges = {});

/// True when `block` has 8 trials made of the four types, each as one adjacent pair.
bool satisfies_block_invariant(const TrialBlock& block);

/// {"block":i,"trial":j,"task":"Rotation","distance":"Near","target":12.5,"center":[x,y,z]}
std::string block_trial_line(int block, int trial, const TaskSpec& spec);

}  // namespace objestures
