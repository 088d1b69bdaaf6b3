#include "objestures/trace.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "objestures/error.hpp"

namespace objestures {

using nlohmann::json;

namespace {

constexpr std::string_view kRatePrefix = "# rate=";

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::ParseError, msg, line);
}

double as_number(const json& j, std::size_t line, std::string_view what) {
  if (!j.is_number()) parse_fail(line, fmt::format("{} must be a number", what));
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(line, fmt::format("{} must be finite", what));
  return v;
}

HandState parse_hand(const json& j, std::size_t line, std::string_view side) {
  if (!j.is_object()) parse_fail(line, fmt::format("'{}' must be an object", side));
  HandState hand;
  for (const auto& [key, value] : j.items()) {
    if (key == "joints") {
      if (!value.is_object()) parse_fail(line, "'joints' must be an object");
      for (const auto& [name, pos] : value.items()) {
        auto joint = joint_from_string(name);
        if (!joint) parse_fail(line, fmt::format("unknown joint '{}'", name));
        if (!pos.is_array() || pos.size() != 3) {
          parse_fail(line, fmt::format("joint '{}' must be [x,y,z]", name));
        }
        hand.joints.set(*joint, {as_number(pos[0], line, name), as_number(pos[1], line, name),
                                 as_number(pos[2], line, name)});
      }
    } else if (key == "poses") {
      if (!value.is_array()) parse_fail(line, "'poses' must be an array");
      for (const auto& p : value) {
        if (!p.is_string()) parse_fail(line, "pose labels must be strings");
        auto label = pose_from_string(p.get<std::string>());
        if (!label) parse_fail(line, fmt::format("unknown pose '{}'", p.get<std::string>()));
        hand.poses.insert(*label);
      }
    } else {
      parse_fail(line, fmt::format("unknown key '{}' in '{}'", key, side));
    }
  }
  if (!j.contains("joints")) parse_fail(line, fmt::format("'{}' has no joints", side));
  return hand;
}

HandFrame parse_line(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(line, e.what());
  }
  if (!j.is_object()) parse_fail(line, "record must be a JSON object");

  HandFrame frame;
  bool has_t = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "t") {
      frame.t = as_number(value, line, "t");
      has_t = true;
    } else if (key == "left") {
      frame.left = parse_hand(value, line, key);
    } else if (key == "right") {
      frame.right = parse_hand(value, line, key);
    } else {
      parse_fail(line, fmt::format("unknown key '{}'", key));
    }
  }
  if (!has_t) parse_fail(line, "missing 't'");
  validate_frame(frame, line);
  return frame;
}

void append_vec(std::string& out, const Vec3& v) {
  fmt::format_to(std::back_inserter(out), "[{},{},{}]", format_decimal(v.x), format_decimal(v.y),
                 format_decimal(v.z));
}

void append_hand(std::string& out, const HandState& hand) {
  out += "{\"joints\":{";
  bool first = true;
  for (std::size_t i = 0; i < kJointCount; ++i) {
    const auto joint = static_cast<JointName>(i);
    const auto& p = hand.joints.get(joint);
    if (!p) continue;
    if (!first) out += ',';
    first = false;
    fmt::format_to(std::back_inserter(out), "\"{}\":", to_string(joint));
    append_vec(out, *p);
  }
  out += "},\"poses\":[";
  first = true;
  for (PoseLabel label : hand.poses.labels()) {
    if (!first) out += ',';
    first = false;
    fmt::format_to(std::back_inserter(out), "\"{}\"", to_string(label));
  }
  out += "]}";
}

}  // namespace

std::string format_decimal(double v) {
  // -0 and 0 are distinct after a round trip; keep the sign.
  return fmt::format("{:.9g}", v);
}

void validate_frame(const HandFrame& frame, std::size_t line) {
  if (!std::isfinite(frame.t) || frame.t < 0.0) parse_fail(line, "'t' must be finite and >= 0");
  if (!frame.left && !frame.right) parse_fail(line, "frame has no hands");
  for (const auto* hand : {&frame.left, &frame.right}) {
    if (!*hand) continue;
    const auto& joints = (*hand)->joints;
    if (!joints.has(JointName::Wrist) || !joints.has(JointName::Palm)) {
      parse_fail(line, "hand must carry at least wrist and palm");
    }
    for (std::size_t i = 0; i < kJointCount; ++i) {
      const auto& p = joints.get(static_cast<JointName>(i));
      if (p && !is_finite(*p)) parse_fail(line, "joint coordinates must be finite");
    }
  }
}

std::string frame_to_line(const HandFrame& frame) {
  std::string out = fmt::format("{{\"t\":{}", format_decimal(frame.t));
  if (frame.left) {
    out += ",\"left\":";
    append_hand(out, *frame.left);
  }
  if (frame.right) {
    out += ",\"right\":";
    append_hand(out, *frame.right);
  }
  out += '}';
  return out;
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (line == 1 && text.starts_with(kRatePrefix)) {
        const std::string value = text.substr(kRatePrefix.size());
        std::size_t used = 0;
        double rate = 0.0;
        try {
          rate = std::stod(value, &used);
        } catch (const std::exception&) {
          parse_fail(line, "bad rate header");
        }
        if (used != value.size() || !(rate > 0.0) || !std::isfinite(rate)) {
          parse_fail(line, "bad rate header");
        }
        trace.nominal_rate = rate;
      }
      continue;
    }
    HandFrame frame = parse_line(text, line);
    if (!trace.frames.empty() && !(frame.t > trace.frames.back().t)) {
      throw Error(Errc::NonMonotoneTimestamp,
                  fmt::format("t={} does not follow t={}", format_decimal(frame.t),
                              format_decimal(trace.frames.back().t)),
                  line);
    }
    trace.frames.push_back(std::move(frame));
  }
  if (trace.frames.empty()) throw Error(Errc::EmptyTrace, "trace has no frames");
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, fmt::format("cannot open '{}'", path));
  return read_trace(in);
}

void write_trace(const Trace& trace, std::ostream& out) {
  out << kRatePrefix << format_decimal(trace.nominal_rate) << '\n';
  for (const auto& frame : trace.frames) out << frame_to_line(frame) << '\n';
}

void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, fmt::format("cannot write '{}'", path));
  write_trace(trace, out);
}

}  // namespace objestures
