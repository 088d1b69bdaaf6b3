#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "objestures/error.hpp"
#include "objestures/random.hpp"
#include "objestures/recognizers.hpp"
#include "objestures/simulator.hpp"

using namespace objestures;

namespace {

std::string serialize(const Trace& t) {
  std::ostringstream out;
  write_trace(t, out);
  return out.str();
}

EngineConfig identity_config() {
  EngineConfig cfg;
  cfg.aema = AemaConfig::identity();
  cfg.gain = GainConfig::identity();
  return cfg;
}

std::unique_ptr<Recognizer> run(RecognizerKind kind, const EngineConfig& cfg, const Trace& trace,
                                 int* activations = nullptr) {
  auto r = make_recognizer(kind, cfg);
  for (const auto& f : trace.frames) {
    for (const auto& e : r->feed(f).events) {
      if (activations && e.kind == EventKind::Activated) ++*activations;
    }
  }
  return r;
}

}  // namespace

TEST(SplitMix64, ReferenceOutputs) {
  SplitMix64 a(1234567);
  for (std::uint64_t expected : {6457827717110365317ull, 3203168211198807973ull, 9817491932198370423ull,
                                 4593380528125082431ull, 16408922859458223821ull}) {
    EXPECT_EQ(a.next(), expected);
  }
  SplitMix64 b(0);
  EXPECT_EQ(b.next(), 0xe220a8397b1dcdafull);
}

TEST(SplitMix64, DerivedDrawsStayInRange) {
  SplitMix64 rng(3);
  std::array<int, 7> counts{};
  for (int i = 0; i < 70000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = rng.below(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / 1e5, 0.0, 0.02);
  EXPECT_NEAR(sq / 1e5, 1.0, 0.02);
}

TEST(Simulator, SlideFrameCountAndExactPath) {
  ScenarioParams p;
  p.kind = ScenarioKind::Slide;
  const auto g = generate_scenario(p);
  ASSERT_EQ(g.trace.frames.size(), g.preamble_frames + 60);
  for (std::size_t i = g.preamble_frames; i < g.trace.frames.size(); ++i) {
    const auto& f = g.trace.frames[i];
    EXPECT_NEAR(f.t, static_cast<double>(i) / 60.0, 1e-15);
    const auto proj = project_to_segment(f.right->joints.at(JointName::IndexTip), p.p1, p.p2);
    EXPECT_LT(proj.distance, 1e-15);
  }
  EXPECT_EQ(g.trace.frames.back().right->joints.at(JointName::IndexTip), p.p2);
}

TEST(Simulator, SameSeedIsByteIdentical) {
  for (auto kind : {ScenarioKind::Slide, ScenarioKind::Dial, ScenarioKind::Squeeze, ScenarioKind::FreeMove,
                    ScenarioKind::BinaryTap}) {
    ScenarioParams p;
    p.kind = kind;
    p.seed = 7;
    p.jitter_sigma = 0.003;
    EXPECT_EQ(serialize(gen_trace(p)), serialize(gen_trace(p)));
    ScenarioParams q = p;
    q.seed = 8;
    EXPECT_NE(serialize(gen_trace(p)), serialize(gen_trace(q)));
  }
}

TEST(Simulator, JitterHasRequestedSigma) {
  ScenarioParams clean;
  clean.kind = ScenarioKind::Squeeze;
  clean.duration = 10.0;
  ScenarioParams noisy = clean;
  noisy.jitter_sigma = 0.004;
  noisy.seed = 99;
  const Trace a = gen_trace(clean), b = gen_trace(noisy);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  double sum = 0.0, sq = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    for (Handedness h : {Handedness::Left, Handedness::Right}) {
      for (std::size_t j = 0; j < kJointCount; ++j) {
        const auto& pa = a.frames[i].hand(h)->joints.get(static_cast<JointName>(j));
        const auto& pb = b.frames[i].hand(h)->joints.get(static_cast<JointName>(j));
        ASSERT_EQ(pa.has_value(), pb.has_value());
        if (!pa) continue;
        for (double d : {pb->x - pa->x, pb->y - pa->y, pb->z - pa->z}) {
          sum += d;
          sq += d * d;
          ++n;
        }
      }
    }
  }
  EXPECT_NEAR(sum / n, 0.0, 1e-4);
  EXPECT_NEAR(std::sqrt(sq / n), 0.004, 0.0002);
}

TEST(Simulator, InvalidParamsAreRejected) {
  auto rejects = [](auto mutate) {
    ScenarioParams p;
    mutate(p);
    try {
      generate_scenario(p);
    } catch (const Error& e) {
      return e.code() == Errc::InvalidParams;
    }
    return false;
  };
  EXPECT_TRUE(rejects([](ScenarioParams& p) { p.duration = 0.0; }));
  EXPECT_TRUE(rejects([](ScenarioParams& p) { p.rate = -60.0; }));
  EXPECT_TRUE(rejects([](ScenarioParams& p) { p.jitter_sigma = -0.1; }));
  EXPECT_TRUE(rejects([](ScenarioParams& p) { p.p2 = p.p1; }));
  EXPECT_TRUE(rejects([](ScenarioParams& p) {
    p.kind = ScenarioKind::Dial;
    p.turns_deg = {};
  }));
}

TEST(Simulator, SplitTurn) {
  EXPECT_EQ(split_turn(90.0, 1), (std::vector<double>{45.0, 45.0}));
  EXPECT_EQ(split_turn(90.0, 0), (std::vector<double>{90.0}));
}

TEST(ClosedLoop, SlideAbsoluteAndContinuous) {
  ScenarioParams p;
  p.kind = ScenarioKind::Slide;
  EngineConfig cfg = identity_config();
  cfg.linear.continuous = false;
  auto r = run(RecognizerKind::Linear, cfg, gen_trace(p));
  EXPECT_NEAR(std::get<double>(r->value()), 1.0, 1e-6);

  p.reentry = 0.5;
  const auto g = generate_scenario(p);
  EXPECT_EQ(g.expected_scalar, 1.5);
  r = run(RecognizerKind::Linear, identity_config(), g.trace);
  EXPECT_NEAR(std::get<double>(r->value()), 1.5, 1e-6);
}

TEST(ClosedLoop, DialWithRegrip) {
  for (int regrips : {0, 1, 3}) {
    ScenarioParams p;
    p.kind = ScenarioKind::Dial;
    p.turns_deg = split_turn(90.0, regrips);
    const auto g = generate_scenario(p);
    EXPECT_NEAR(g.expected_scalar, std::numbers::pi / 2, 1e-15);
    auto r = run(RecognizerKind::Rotational, identity_config(), g.trace);
    EXPECT_NEAR(std::get<double>(r->value()), std::numbers::pi / 2, 1e-6) << regrips;
  }
  ScenarioParams p;
  p.kind = ScenarioKind::Dial;
  p.turns_deg = {60.0, -100.0, 30.0};
  auto r = run(RecognizerKind::Rotational, identity_config(), gen_trace(p));
  EXPECT_NEAR(std::get<double>(r->value()), -10.0 * std::numbers::pi / 180, 1e-6);
}

TEST(ClosedLoop, Squeeze) {
  ScenarioParams p;
  p.kind = ScenarioKind::Squeeze;
  p.depth = 0.5;
  auto r = run(RecognizerKind::Nonlinear, identity_config(), gen_trace(p));
  EXPECT_NEAR(std::get<double>(r->value()), 0.5, 1e-9);
}

TEST(ClosedLoop, FreeMove) {
  ScenarioParams p;
  p.kind = ScenarioKind::FreeMove;
  p.waypoints = {{0.1, 0.05, 0.0}, {0.25, 0.0, -0.1}};
  const auto g = generate_scenario(p);
  auto r = run(RecognizerKind::Free, EngineConfig{}, g.trace);
  const Vec3 got = std::get<Vec3>(r->value());
  EXPECT_NEAR(got.x, g.expected_position.x, 1e-6);
  EXPECT_NEAR(got.y, g.expected_position.y, 1e-6);
  EXPECT_NEAR(got.z, g.expected_position.z, 1e-6);
  EXPECT_FALSE(r->phase().kind == PhaseKind::Engaged);
}

TEST(ClosedLoop, BinaryTaps) {
  ScenarioParams p;
  p.kind = ScenarioKind::BinaryTap;
  p.taps = 4;
  const auto g = generate_scenario(p);
  int activations = 0;
  auto r = run(RecognizerKind::Binary, EngineConfig{}, g.trace, &activations);
  EXPECT_EQ(activations, 4);
  EXPECT_EQ(std::get<double>(r->value()), g.expected_scalar);
}
