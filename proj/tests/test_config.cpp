#include <gtest/gtest.h>

#include <sstream>

#include "objestures/config.hpp"
#include "objestures/error.hpp"

using namespace objestures;

namespace {

EngineConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidConfig);
    return e.line();
  }
  ADD_FAILURE() << "accepted: " << text;
  return 0;
}

}  // namespace

TEST(Config, DefaultsMatchStatedValues) {
  const EngineConfig c;
  EXPECT_EQ(c.binary.threshold, 0.01);
  EXPECT_EQ(c.linear.threshold, 0.03);
  EXPECT_TRUE(c.linear.continuous);
  EXPECT_EQ(c.rotational.engage_radius, 0.05);
  EXPECT_EQ(c.free.dwell, 3.0);
  EXPECT_EQ(c.free.tolerance, 0.02);
  EXPECT_EQ(c.free.stationary_eps, 0.005);
  EXPECT_EQ(c.aema.alpha_min, 0.0);
  EXPECT_EQ(c.aema.alpha_max, 1.0);
  EXPECT_EQ(c.gain.v_min, 0.5);
  EXPECT_EQ(c.gain.v_max, 2.0);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesEverySection) {
  const auto c = parse(
      "# engine overrides\n"
      "\n"
      "binary.mode = gesture\n"
      "binary.label = Stop\n"
      "linear.continuous = off\n"
      "linear.joint = middle_tip\n"
      "rotational.engage_radius = 0.07\n"
      "nonlinear.hand = left\n"
      "free.dwell = 2.5\n"
      "free.joint_b = middle_tip\n"
      "aema.alpha_min=0.2\n"
      "aema.k = 0.01\n"
      "gain.v_max = 3\n"
      "pose.pinch_max = 0.025\n"
      "setup.confirm = Fist\n");
  EXPECT_EQ(c.binary.mode, BinaryMode::GestureLabeled);
  EXPECT_EQ(c.binary.label, PoseLabel::Stop);
  EXPECT_FALSE(c.linear.continuous);
  EXPECT_EQ(c.linear.joint, JointName::MiddleTip);
  EXPECT_EQ(c.rotational.engage_radius, 0.07);
  EXPECT_EQ(c.nonlinear.hand, Handedness::Left);
  EXPECT_EQ(c.free.dwell, 2.5);
  EXPECT_EQ(c.free.joint_b, JointName::MiddleTip);
  EXPECT_EQ(c.aema.alpha_min, 0.2);
  EXPECT_EQ(c.aema.k, 0.01);
  EXPECT_EQ(c.gain.v_max, 3.0);
  EXPECT_EQ(c.pose.pinch_max, 0.025);
  EXPECT_EQ(c.setup.confirm, PoseLabel::Fist);
}

TEST(Config, RejectsWithLineNumbers) {
  EXPECT_EQ(error_line("aema.k = 1\nlinear.speed = 2\n"), 2u);
  EXPECT_EQ(error_line("linear.threshold = abc\n"), 1u);
  EXPECT_EQ(error_line("# c\nlinear.threshold = -0.1\n"), 2u);
  EXPECT_EQ(error_line("no equals sign\n"), 1u);
  EXPECT_EQ(error_line("binary.joint = elbow\n"), 1u);
  // Cross-field constraints are checked after the whole file is read.
  EXPECT_EQ(error_line("aema.alpha_min = 0.9\naema.alpha_max = 0.5\n"), 0u);
  EXPECT_EQ(error_line("pose.curl_max = 0.1\n"), 0u);
}
