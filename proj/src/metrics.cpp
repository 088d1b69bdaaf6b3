#include "objestures/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "objestures/error.hpp"
#include "objestures/trace.hpp"

namespace objestures {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 3> kApproachNames = {"Hands", "Obj", "NObj"};
constexpr std::array<std::string_view, 5> kGroupKeyNames = {"participant", "approach", "task",
                                                            "distance", "block"};
constexpr std::array<std::string_view, 3> kMetricNames = {"error", "movement", "time"};
constexpr std::array<Metric, 3> kMetrics = {Metric::Error, Metric::Movement, Metric::Time};

double metric_value(const TrialMetrics& m, Metric metric) {
  switch (metric) {
    case Metric::Error: return m.error;
    case Metric::Movement: return m.movement;
    case Metric::Time: return m.time;
  }
  return 0.0;
}

/// Sort rank for group values so enumerations keep their natural order.
std::string sort_key(GroupKey key, const std::string& value) {
  switch (key) {
    case GroupKey::Approach:
      return std::to_string(static_cast<int>(*approach_from_string(value)));
    case GroupKey::Task: return std::to_string(static_cast<int>(*task_from_string(value)));
    case GroupKey::Distance:
      return std::to_string(static_cast<int>(*distance_from_string(value)));
    case GroupKey::Block: return fmt::format("{:>12}", value);
    case GroupKey::Participant: return value;
  }
  return value;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::ParseError, msg, line);
}

double number(const json& j, std::string_view key, std::size_t line) {
  if (!j.is_number()) parse_fail(line, fmt::format("'{}' must be a number", key));
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(line, fmt::format("'{}' must be finite", key));
  return v;
}

int integer(const json& j, std::string_view key, std::size_t line) {
  if (!j.is_number_integer()) parse_fail(line, fmt::format("'{}' must be an integer", key));
  return j.get<int>();
}

std::string text(const json& j, std::string_view key, std::size_t line) {
  if (!j.is_string()) parse_fail(line, fmt::format("'{}' must be a string", key));
  return j.get<std::string>();
}

std::vector<Vec3> path(const json& j, std::string_view key, std::size_t line) {
  if (!j.is_array()) parse_fail(line, fmt::format("'{}' must be an array", key));
  std::vector<Vec3> out;
  out.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 3) parse_fail(line, fmt::format("'{}' points must be [x,y,z]", key));
    out.push_back({number(p[0], key, line), number(p[1], key, line), number(p[2], key, line)});
  }
  return out;
}

template <typename T, typename Fn>
T parse_enum(const json& j, std::string_view key, std::size_t line, Fn&& from_string) {
  const std::string s = text(j, key, line);
  auto v = from_string(s);
  if (!v) parse_fail(line, fmt::format("bad {} '{}'", key, s));
  return *v;
}

TrialRecord parse_trial(const std::string& src, std::size_t line) {
  json j;
  try {
    j = json::parse(src);
  } catch (const json::parse_error& e) {
    parse_fail(line, e.what());
  }
  if (!j.is_object()) parse_fail(line, "record must be a JSON object");

  static const std::set<std::string, std::less<>> required = {
      "participant", "approach", "task",     "distance",  "block",           "trial",
      "target",      "manipulated", "t_appear", "t_release", "left_wrist_path", "right_wrist_path"};
  for (const auto& [key, _] : j.items()) {
    if (!required.contains(key)) parse_fail(line, fmt::format("unknown key '{}'", key));
  }
  for (const auto& key : required) {
    if (!j.contains(key)) parse_fail(line, fmt::format("missing '{}'", key));
  }

  TrialRecord r;
  r.participant = text(j["participant"], "participant", line);
  r.approach = parse_enum<Approach>(j["approach"], "approach", line, approach_from_string);
  r.task = parse_enum<Task>(j["task"], "task", line, task_from_string);
  r.distance = parse_enum<Distance>(j["distance"], "distance", line, distance_from_string);
  r.block = integer(j["block"], "block", line);
  r.trial = integer(j["trial"], "trial", line);
  r.target = number(j["target"], "target", line);
  r.manipulated = number(j["manipulated"], "manipulated", line);
  r.t_appear = number(j["t_appear"], "t_appear", line);
  r.t_release = number(j["t_release"], "t_release", line);
  r.left_wrist_path = path(j["left_wrist_path"], "left_wrist_path", line);
  r.right_wrist_path = path(j["right_wrist_path"], "right_wrist_path", line);
  if (r.t_release < r.t_appear) parse_fail(line, "t_release precedes t_appear");
  return r;
}

std::string format_path(const std::vector<Vec3>& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("[{},{},{}]", format_decimal(path[i].x), format_decimal(path[i].y),
                       format_decimal(path[i].z));
  }
  out += ']';
  return out;
}

}  // namespace

std::string_view to_string(Approach a) { return kApproachNames[static_cast<std::size_t>(a)]; }

std::optional<Approach> approach_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kApproachNames.size(); ++i) {
    if (kApproachNames[i] == s) return static_cast<Approach>(i);
  }
  return std::nullopt;
}

std::string_view to_string(GroupKey k) { return kGroupKeyNames[static_cast<std::size_t>(k)]; }

std::optional<GroupKey> group_key_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kGroupKeyNames.size(); ++i) {
    if (kGroupKeyNames[i] == s) return static_cast<GroupKey>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Metric m) { return kMetricNames[static_cast<std::size_t>(m)]; }

double path_length(const std::vector<Vec3>& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += distance(path[i - 1], path[i]);
  return total;
}

TrialMetrics compute_metrics(const TrialRecord& r) {
  TrialMetrics m;
  if (r.task == Task::Scaling) {
    if (r.target == 0.0) throw Error(Errc::ZeroTarget, "scaling target side is zero");
    m.error = std::abs(1.0 - r.manipulated / r.target) * 100.0;
  } else {
    m.error = std::abs(r.manipulated - r.target);
  }
  m.movement = path_length(r.left_wrist_path) + path_length(r.right_wrist_path);
  m.time = r.t_release - r.t_appear;
  return m;
}

std::vector<AnnotatedTrial> filter_trials(std::vector<AnnotatedTrial> trials,
                                          const FilterThresholds& th) {
  for (auto& [r, m] : trials) {
    const bool too_short = m.time < th.min_time;
    const bool unchanged = r.task == Task::Scaling
                               ? std::abs(r.manipulated - th.start_side) < th.min_scale_change
                               : std::abs(r.manipulated) < th.min_rotation;
    m.valid = !(too_short || unchanged);

    const double max_error =
        r.task == Task::Scaling ? th.max_scaling_error : th.max_rotation_error;
    m.outlier = m.error > max_error || m.movement > th.max_movement || m.time > th.max_time;
  }
  return trials;
}

std::string group_value(const TrialRecord& r, GroupKey key) {
  switch (key) {
    case GroupKey::Participant: return r.participant;
    case GroupKey::Approach: return std::string(to_string(r.approach));
    case GroupKey::Task: return std::string(to_string(r.task));
    case GroupKey::Distance: return std::string(to_string(r.distance));
    case GroupKey::Block: return std::to_string(r.block);
  }
  return {};
}

Summary summarize(const std::vector<AnnotatedTrial>& trials, const std::vector<GroupKey>& keys,
                  const DropPolicy& policy) {
  // Distinct values per key, in natural order.
  std::vector<std::vector<std::string>> levels(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    std::map<std::string, std::string> ordered;
    for (const auto& t : trials) {
      const std::string v = group_value(t.record, keys[k]);
      ordered.emplace(sort_key(keys[k], v), v);
    }
    for (auto& [_, v] : ordered) levels[k].push_back(v);
  }

  std::map<std::vector<std::string>, std::vector<const TrialMetrics*>> members;
  for (const auto& t : trials) {
    if (!policy.keeps(t.metrics)) continue;
    std::vector<std::string> g;
    for (GroupKey key : keys) g.push_back(group_value(t.record, key));
    members[g].push_back(&t.metrics);
  }

  Summary out;
  std::vector<std::size_t> idx(keys.size(), 0);
  const bool any_level_empty =
      std::any_of(levels.begin(), levels.end(), [](const auto& l) { return l.empty(); });
  if (any_level_empty) return out;

  for (;;) {
    std::vector<std::string> group;
    for (std::size_t k = 0; k < keys.size(); ++k) group.push_back(levels[k][idx[k]]);
    const auto it = members.find(group);
    const std::vector<const TrialMetrics*> empty;
    const auto& items = it == members.end() ? empty : it->second;
    if (items.empty()) out.empty_groups.push_back(group);

    for (Metric metric : kMetrics) {
      SummaryRow row;
      row.group = group;
      row.metric = metric;
      row.n = items.size();
      if (row.n > 0) {
        double sum = 0.0;
        double log_sum = 0.0;
        bool positive = true;
        for (const auto* m : items) {
          const double v = metric_value(*m, metric);
          sum += v;
          if (v > 0.0) log_sum += std::log(v);
          else positive = false;
        }
        const double n = static_cast<double>(row.n);
        row.mean = sum / n;
        if (row.n > 1) {
          double ss = 0.0;
          for (const auto* m : items) {
            const double d = metric_value(*m, metric) - row.mean;
            ss += d * d;
          }
          row.sd = std::sqrt(ss / (n - 1.0));
        }
        if (positive) row.log_mean = log_sum / n;
      }
      out.rows.push_back(std::move(row));
    }

    // Odometer over the key levels, last key fastest.
    std::size_t k = keys.size();
    while (k > 0) {
      --k;
      if (++idx[k] < levels[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (keys.empty()) return out;
  }
}

std::vector<TrialRecord> read_trial_log(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string src;
  std::size_t line = 0;
  while (std::getline(in, src)) {
    ++line;
    if (!src.empty() && src.back() == '\r') src.pop_back();
    if (src.empty() || src.front() == '#') continue;
    out.push_back(parse_trial(src, line));
  }
  if (out.empty()) throw Error(Errc::ParseError, "trial log has no records");
  return out;
}

std::vector<TrialRecord> read_trial_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, fmt::format("cannot open '{}'", path));
  return read_trial_log(in);
}

std::string trial_to_line(const TrialRecord& r) {
  return fmt::format(
      R"({{"participant":{},"approach":"{}","task":"{}","distance":"{}","block":{},"trial":{},)"
      R"("target":{},"manipulated":{},"t_appear":{},"t_release":{},)"
      R"("left_wrist_path":{},"right_wrist_path":{}}})",
      json(r.participant).dump(), to_string(r.approach), to_string(r.task),
      to_string(r.distance), r.block, r.trial, format_decimal(r.target),
      format_decimal(r.manipulated), format_decimal(r.t_appear), format_decimal(r.t_release),
      format_path(r.left_wrist_path), format_path(r.right_wrist_path));
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_summary_csv(const Summary& summary, const std::vector<GroupKey>& keys,
                       std::ostream& out) {
  for (GroupKey k : keys) out << to_string(k) << ',';
  out << "n,metric,mean,sd,log_mean\r\n";
  for (const auto& row : summary.rows) {
    for (const auto& v : row.group) out << csv_field(v) << ',';
    out << row.n << ',' << to_string(row.metric) << ',';
    if (row.n > 0) out << format_decimal(row.mean) << ',' << format_decimal(row.sd);
    else out << ',';
    out << ',';
    if (row.log_mean) out << format_decimal(*row.log_mean);
    out << "\r\n";
  }
}

void write_trials_csv(const std::vector<AnnotatedTrial>& trials, const DropPolicy& policy,
                      std::ostream& out) {
  out << "participant,approach,task,distance,block,trial,error,movement,time,valid,outlier\r\n";
  for (const auto& [r, m] : trials) {
    if (!policy.keeps(m)) continue;
    out << csv_field(r.participant) << ',' << to_string(r.approach) << ',' << to_string(r.task)
        << ',' << to_string(r.distance) << ',' << r.block << ',' << r.trial << ','
        << format_decimal(m.error) << ',' << format_decimal(m.movement) << ','
        << format_decimal(m.time) << ',' << (m.valid ? "true" : "false") << ','
        << (m.outlier ? "true" : "false") << "\r\n";
  }
}

}  // namespace objestures
