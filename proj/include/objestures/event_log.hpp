#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "objestures/recognizers.hpp"
#include "objestures/trace.hpp"

namespace objestures {

/// {"t":<s>,"recognizer":"<kind>","event":"<EventKind>","value":<number|[x,y,z]>}
std::string event_to_line(double t, std::string_view recognizer, const RecognizerEvent& event);

std::string format_value(const OutputValue& value);

struct ReplayOptions {
  bool classify_poses = false;  // fill empty pose sets with the geometric classifier
};

/// Feeds every frame of `trace` to `recognizer` and writes one line per event.
/// Returns the number of lines written.
std::size_t replay(const Trace& trace, Recognizer& recognizer, const EngineConfig& cfg,
                   std::ostream& log, const ReplayOptions& opts = {});

}  // namespace objestures
