#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "objestures/geometry.hpp"
#include "objestures/study.hpp"

namespace objestures {

enum class Approach { Hands, Obj, NObj };

std::string_view to_string(Approach a);
std::optional<Approach> approach_from_string(std::string_view s);

/// Raw log of one study trial.
struct TrialRecord {
  std::string participant;
  Approach approach = Approach::Hands;
  Task task = Task::Rotation;
  Distance distance = Distance::Near;
  int block = 0;
  int trial = 0;
  double target = 0.0;       // degrees (Rotation) or side length in meters (Scaling)
  double manipulated = 0.0;  // final value at release, same unit as target
  double t_appear = 0.0;
  double t_release = 0.0;
  std::vector<Vec3> left_wrist_path;
  std::vector<Vec3> right_wrist_path;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Error is percent for Scaling and degrees for Rotation.
struct TrialMetrics {
  double error = 0.0;
  double movement = 0.0;  // meters, both wrists
  double time = 0.0;      // seconds
  bool valid = true;
  bool outlier = false;

  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

/// Throws Errc::ZeroTarget for a Scaling trial with target 0.
TrialMetrics compute_metrics(const TrialRecord& r);

/// Length of the polyline through `path`.
double path_length(const std::vector<Vec3>& path);

/// Exclusion rules. All comparisons are strict.
struct FilterThresholds {
  double min_time = 0.5;             // invalid below
  double min_scale_change = 0.001;   // meters from the start side, invalid below
  double min_rotation = 1.0;         // degrees from 0, invalid below
  double start_side = kCubeStartSide;
  double max_scaling_error = 50.0;   // percent, outlier above
  double max_rotation_error = 10.0;  // degrees, outlier above
  double max_movement = 5.0;         // meters, outlier above
  double max_time = 15.0;            // seconds, outlier above
};

struct AnnotatedTrial {
  TrialRecord record;
  TrialMetrics metrics;
};

/// Sets `valid` and `outlier` on every trial; removes nothing.
std::vector<AnnotatedTrial> filter_trials(std::vector<AnnotatedTrial> trials,
                                          const FilterThresholds& th = {});

enum class GroupKey { Participant, Approach, Task, Distance, Block };

std::string_view to_string(GroupKey k);
std::optional<GroupKey> group_key_from_string(std::string_view s);

enum class Metric { Error, Movement, Time };

std::string_view to_string(Metric m);

struct DropPolicy {
  bool drop_invalid = false;
  bool drop_outliers = false;

  bool keeps(const TrialMetrics& m) const {
    return !(drop_invalid && !m.valid) && !(drop_outliers && m.outlier);
  }
};

struct SummaryRow {
  std::vector<std::string> group;  // values of the group-by keys, in key order
  std::size_t n = 0;
  Metric metric = Metric::Error;
  double mean = 0.0;
  double sd = 0.0;                 // sample SD; 0 when n < 2
  std::optional<double> log_mean;  // mean of ln(value); empty if any value <= 0 or n == 0
};

struct Summary {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<std::string>> empty_groups;
};

/// Groups are the cartesian product of the key values seen in `trials`
/// (before dropping), so groups emptied by the policy are still listed.
Summary summarize(const std::vector<AnnotatedTrial>& trials, const std::vector<GroupKey>& keys,
                  const DropPolicy& policy = {});

std::string group_value(const TrialRecord& r, GroupKey key);

/// One JSON object per line, keys as the TrialRecord fields with
/// *_wrist_path as [[x,y,z],...]. Throws ParseError with line numbers, or
/// when the log holds no records.
std::vector<TrialRecord> read_trial_log(std::istream& in);
std::vector<TrialRecord> read_trial_log_file(const std::string& path);
std::string trial_to_line(const TrialRecord& r);

/// RFC-4180 field quoting.
std::string csv_field(std::string_view s);

/// Header: <keys...>,n,metric,mean,sd,log_mean
void write_summary_csv(const Summary& summary, const std::vector<GroupKey>& keys,
                       std::ostream& out);

/// Header: participant,approach,task,distance,block,trial,error,movement,time,valid,outlier
void write_trials_csv(const std::vector<AnnotatedTrial>& trials, const DropPolicy& policy,
                      std::ostream& out);

}  // namespace objestures
