#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace objestures {

enum class Errc {
  DegenerateSegment,
  VerticalDirection,
  MissingJoint,
  ParseError,
  NonMonotoneTimestamp,
  EmptyTrace,
  NonPositiveDt,
  DegenerateAnchors,
  InvalidParams,
  InvalidConfig,
  ZeroTarget,
  WrongPhase,
};

std::string_view to_string(Errc code);

/// Every failure in the library is reported as an Error carrying a code.
/// Parse failures also carry the 1-based input line (0 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0);

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Errc code_;
  std::size_t line_;
};

}  // namespace objestures
