#include "objestures/event_log.hpp"

#include <ostream>

#include <fmt/format.h>

#include "objestures/pose.hpp"

namespace objestures {

std::string format_value(const OutputValue& value) {
  if (const double* v = std::get_if<double>(&value)) return format_decimal(*v);
  const Vec3& p = std::get<Vec3>(value);
  return fmt::format("[{},{},{}]", format_decimal(p.x), format_decimal(p.y), format_decimal(p.z));
}

std::string event_to_line(double t, std::string_view recognizer, const RecognizerEvent& event) {
  return fmt::format(R"({{"t":{},"recognizer":"{}","event":"{}","value":{}}})", format_decimal(t),
                     recognizer, to_string(event.kind), format_value(event.value));
}

std::size_t replay(const Trace& trace, Recognizer& recognizer, const EngineConfig& cfg,
                   std::ostream& log, const ReplayOptions& opts) {
  std::size_t lines = 0;
  const std::string_view name = to_string(recognizer.kind());
  for (const HandFrame& original : trace.frames) {
    HandFrame frame = original;
    if (opts.classify_poses) fill_missing_poses(frame, cfg.pose);
    const StepResult result = recognizer.feed(frame);
    for (const auto& event : result.events) {
      log << event_to_line(frame.t, name, event) << '\n';
      ++lines;
    }
  }
  return lines;
}

}  // namespace objestures
