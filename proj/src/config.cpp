#include "objestures/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

#include <fmt/format.h>

#include "objestures/error.hpp"

namespace objestures {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, std::size_t line) {
  throw Error(Errc::InvalidConfig, fmt::format("bad value '{}' for '{}'", value, key), line);
}

double to_double(const std::string& key, const std::string& value, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, line);
  }
  if (used != value.size() || !std::isfinite(v)) bad_value(key, value, line);
  return v;
}

bool to_bool(const std::string& key, const std::string& value, std::size_t line) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  bad_value(key, value, line);
}

JointName to_joint(const std::string& key, const std::string& value, std::size_t line) {
  if (auto j = joint_from_string(value)) return *j;
  bad_value(key, value, line);
}

Handedness to_hand(const std::string& key, const std::string& value, std::size_t line) {
  if (auto h = handedness_from_string(value)) return *h;
  bad_value(key, value, line);
}

PoseLabel to_pose(const std::string& key, const std::string& value, std::size_t line) {
  if (auto p = pose_from_string(value); p && *p != PoseLabel::None) return *p;
  bad_value(key, value, line);
}

using Setter = std::function<void(EngineConfig&, const std::string&, const std::string&, std::size_t)>;

template <typename Member>
Setter number(Member member) {
  return [member](EngineConfig& c, const std::string& k, const std::string& v, std::size_t l) {
    std::invoke(member, c) = to_double(k, v, l);
  };
}

/// For keys that must be strictly positive, so the error can carry the line.
template <typename Member>
Setter positive(Member member) {
  return [member](EngineConfig& c, const std::string& k, const std::string& v, std::size_t l) {
    const double x = to_double(k, v, l);
    if (!(x > 0.0)) bad_value(k, v, l);
    std::invoke(member, c) = x;
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"setup.confirm",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.setup.confirm = to_pose(k, v, l); }},
      {"setup.fallback_dt", positive([](EngineConfig& c) -> double& { return c.setup.fallback_dt; })},

      {"binary.mode",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) {
         if (v == "object") c.binary.mode = BinaryMode::ObjectAnchored;
         else if (v == "gesture") c.binary.mode = BinaryMode::GestureLabeled;
         else bad_value(k, v, l);
       }},
      {"binary.label",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.binary.label = to_pose(k, v, l); }},
      {"binary.threshold", positive([](EngineConfig& c) -> double& { return c.binary.threshold; })},
      {"binary.joint",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.binary.joint = to_joint(k, v, l); }},
      {"binary.hand",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.binary.hand = to_hand(k, v, l); }},

      {"linear.threshold", positive([](EngineConfig& c) -> double& { return c.linear.threshold; })},
      {"linear.continuous",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.linear.continuous = to_bool(k, v, l); }},
      {"linear.joint",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.linear.joint = to_joint(k, v, l); }},
      {"linear.hand",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.linear.hand = to_hand(k, v, l); }},

      {"rotational.engage_radius",
       positive([](EngineConfig& c) -> double& { return c.rotational.engage_radius; })},
      {"rotational.hand",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.rotational.hand = to_hand(k, v, l); }},

      {"nonlinear.hand",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.nonlinear.hand = to_hand(k, v, l); }},

      {"free.tolerance", positive([](EngineConfig& c) -> double& { return c.free.tolerance; })},
      {"free.dwell", positive([](EngineConfig& c) -> double& { return c.free.dwell; })},
      {"free.stationary_eps", positive([](EngineConfig& c) -> double& { return c.free.stationary_eps; })},
      {"free.joint_a",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.free.joint_a = to_joint(k, v, l); }},
      {"free.joint_b",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.free.joint_b = to_joint(k, v, l); }},
      {"free.hand",
       [](EngineConfig& c, const auto& k, const auto& v, auto l) { c.free.hand = to_hand(k, v, l); }},

      {"aema.alpha_min", number([](EngineConfig& c) -> double& { return c.aema.alpha_min; })},
      {"aema.alpha_max", number([](EngineConfig& c) -> double& { return c.aema.alpha_max; })},
      {"aema.k", positive([](EngineConfig& c) -> double& { return c.aema.k; })},
      {"gain.v_min", positive([](EngineConfig& c) -> double& { return c.gain.v_min; })},
      {"gain.v_max", positive([](EngineConfig& c) -> double& { return c.gain.v_max; })},
      {"gain.k", positive([](EngineConfig& c) -> double& { return c.gain.k; })},

      {"pose.curl_max", positive([](EngineConfig& c) -> double& { return c.pose.curl_max; })},
      {"pose.extend_min", positive([](EngineConfig& c) -> double& { return c.pose.extend_min; })},
      {"pose.pinch_max", positive([](EngineConfig& c) -> double& { return c.pose.pinch_max; })},
  };
  return table;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidConfig, what);
}

}  // namespace

void EngineConfig::validate() const {
  require(setup.fallback_dt > 0.0, "setup.fallback_dt must be > 0");
  require(binary.threshold > 0.0, "binary.threshold must be > 0");
  require(linear.threshold > 0.0, "linear.threshold must be > 0");
  require(rotational.engage_radius > 0.0, "rotational.engage_radius must be > 0");
  require(free.tolerance > 0.0, "free.tolerance must be > 0");
  require(free.dwell > 0.0, "free.dwell must be > 0");
  require(free.stationary_eps > 0.0, "free.stationary_eps must be > 0");
  require(free.joint_a != free.joint_b, "free.joint_a and free.joint_b must differ");
  aema.validate();
  gain.validate();
  pose.validate();
}

void apply_config_value(EngineConfig& cfg, const std::string& key, const std::string& value,
                        std::size_t line) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) {
    throw Error(Errc::InvalidConfig, fmt::format("unknown key '{}'", key), line);
  }
  it->second(cfg, key, value, line);
}

EngineConfig parse_config(std::istream& in) {
  EngineConfig cfg;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    text = trim(text);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::InvalidConfig, fmt::format("expected 'key = value', got '{}'", text), line);
    }
    apply_config_value(cfg, trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line);
  }
  cfg.validate();
  return cfg;
}

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidConfig, fmt::format("cannot open '{}'", path));
  return parse_config(in);
}

}  // namespace objestures
