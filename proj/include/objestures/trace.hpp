#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "objestures/hand.hpp"

namespace objestures {

inline constexpr double kDefaultFrameRate = 60.0;

struct Trace {
  std::vector<HandFrame> frames;
  double nominal_rate = kDefaultFrameRate;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Decimal text with 9 significant digits, the on-disk float format.
std::string format_decimal(double v);

/// Checks a single frame: t >= 0 and finite, at least one hand, wrist and
/// palm present on every hand, all joints finite. Throws ParseError.
void validate_frame(const HandFrame& frame, std::size_t line = 0);

/// Line-record trace format, one JSON object per line:
///   {"t":0.5,"left":{"joints":{"wrist":[x,y,z],...},"poses":["ThumbsUp"]},"right":{...}}
/// Blank lines and lines starting with '#' are skipped. A leading
/// "# rate=<fps>" comment sets the nominal rate.
/// Throws EmptyTrace, ParseError (with line) or NonMonotoneTimestamp.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

void write_trace(const Trace& trace, std::ostream& out);
void write_trace_file(const Trace& trace, const std::string& path);

/// The single-line serialization of one frame (no trailing newline).
std::string frame_to_line(const HandFrame& frame);

}  // namespace objestures
