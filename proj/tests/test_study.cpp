#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "objestures/study.hpp"

using namespace objestures;

namespace {

/// Independent statement of the block rule, for cross-checking.
bool paired_types(const TrialBlock& b) {
  if (b.trials.size() != 8) return false;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 8; i += 2) {
    const auto a = type_code(b.trials[i].task, b.trials[i].distance);
    const auto c = type_code(b.trials[i + 1].task, b.trials[i + 1].distance);
    if (a != c || !seen.insert(a).second) return false;
  }
  return seen.size() == 4;
}

std::string order_of(const TrialBlock& b) {
  std::string key;
  for (std::size_t i = 0; i < 8; i += 2) key += type_code(b.trials[i].task, b.trials[i].distance);
  return key;
}

}  // namespace

TEST(SampleTarget, RotationMagnitudeAndSigns) {
  SplitMix64 rng(1);
  bool pos = false, neg = false;
  for (int i = 0; i < 10000; ++i) {
    const auto t = sample_target(Task::Rotation, Distance::Near, rng);
    ASSERT_GE(std::abs(t.target), 7.5);
    ASSERT_LE(std::abs(t.target), 45.0);
    pos |= t.target > 0;
    neg |= t.target < 0;
  }
  EXPECT_TRUE(pos && neg);
}

TEST(SampleTarget, ScalingAvoidsTheGap) {
  SplitMix64 rng(2);
  int down = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto t = sample_target(Task::Scaling, Distance::Far, rng);
    ASSERT_FALSE(t.target > 0.12 && t.target < 0.18) << t.target;
    ASSERT_TRUE((t.target >= 0.05 && t.target <= 0.12) || (t.target >= 0.18 && t.target <= 0.25));
    down += t.target <= 0.12;
    EXPECT_EQ(t.cube_start_side, 0.15);
  }
  // Fair coin: 5000 +- 4 sigma (sigma = 50).
  EXPECT_NEAR(down, 5000, 200);
}

TEST(SampleTarget, CentersInsideRegions) {
  SplitMix64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto n = sample_target(Task::Rotation, Distance::Near, rng);
    ASSERT_LE(std::abs(n.cube_center.x - 0.0), 0.10);
    ASSERT_LE(std::abs(n.cube_center.y - 0.95), 0.10);
    ASSERT_LE(std::abs(n.cube_center.z - 0.40), 0.10);
    const auto f = sample_target(Task::Scaling, Distance::Far, rng);
    ASSERT_LE(std::abs(f.cube_center.x - 0.0), 0.35);
    ASSERT_LE(std::abs(f.cube_center.y - 0.95), 0.35);
    ASSERT_LE(std::abs(f.cube_center.z - 1.40), 0.35);
  }
}

TEST(GenBlock, InvariantOverManySeeds) {
  std::map<std::string, int> orders;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    SplitMix64 rng(seed);
    const auto b = gen_block(rng);
    ASSERT_TRUE(paired_types(b));
    ASSERT_TRUE(satisfies_block_invariant(b));
    ++orders[order_of(b)];
  }
  ASSERT_EQ(orders.size(), 24u);
  const double p = 1.0 / 24, n = 10000;
  const double sigma = std::sqrt(n * p * (1 - p));
  for (const auto& [order, count] : orders) {
    EXPECT_NEAR(count, n * p, 3 * sigma) << order;
  }
}

TEST(GenBlock, ForbiddenPatternRejected) {
  SplitMix64 rng(5);
  TrialBlock b = gen_block(rng);
  // NS,NS,NR,NR,NS,... : swap a trial into a non-adjacent slot.
  std::swap(b.trials[1], b.trials[4]);
  EXPECT_FALSE(satisfies_block_invariant(b));
  b.trials.pop_back();
  EXPECT_FALSE(satisfies_block_invariant(b));
}

TEST(GenSession, ThreeBlocksMakeTwentyFourTrials) {
  SplitMix64 rng(1);
  const auto blocks = gen_session(3, rng);
  ASSERT_EQ(blocks.size(), 3u);
  std::size_t total = 0;
  for (const auto& b : blocks) {
    EXPECT_TRUE(paired_types(b));
    total += b.trials.size();
  }
  EXPECT_EQ(total, 24u);
}

TEST(GenSession, LineFormat) {
  TaskSpec s;
  s.task = Task::Scaling;
  s.distance = Distance::Far;
  s.target = 0.2;
  s.cube_center = {0.1, 0.95, 1.5};
  EXPECT_EQ(block_trial_line(2, 5, s),
            R"({"block":2,"trial":5,"task":"Scaling","distance":"Far","target":0.2,"center":[0.1,0.95,1.5]})");
}
