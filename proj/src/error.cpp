#include "objestures/error.hpp"

#include <fmt/format.h>

namespace objestures {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DegenerateSegment: return "DegenerateSegment";
    case Errc::VerticalDirection: return "VerticalDirection";
    case Errc::MissingJoint: return "MissingJoint";
    case Errc::ParseError: return "ParseError";
    case Errc::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case Errc::EmptyTrace: return "EmptyTrace";
    case Errc::NonPositiveDt: return "NonPositiveDt";
    case Errc::DegenerateAnchors: return "DegenerateAnchors";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ZeroTarget: return "ZeroTarget";
    case Errc::WrongPhase: return "WrongPhase";
  }
  return "Unknown";
}

namespace {

std::string decorate(Errc code, const std::string& what, std::size_t line) {
  if (line > 0) return fmt::format("{} at line {}: {}", to_string(code), line, what);
  return fmt::format("{}: {}", to_string(code), what);
}

}  // namespace

Error::Error(Errc code, const std::string& what, std::size_t line)
    : std::runtime_error(decorate(code, what, line)), code_(code), line_(line) {}

}  // namespace objestures
