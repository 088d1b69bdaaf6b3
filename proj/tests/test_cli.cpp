#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "objestures/metrics.hpp"
#include "objestures/study.hpp"
#include "objestures/trace.hpp"

using namespace objestures;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "objestures");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = objestures::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("objestures_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
  }

  fs::path dir_;
};

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_F(CliTest, UsageErrorsExit64) {
  EXPECT_EQ(invoke({}).code, objestures::cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, objestures::cli::kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--kind", "slide", "--duration", "0"}).code, objestures::cli::kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--kind", "wobble"}).code, objestures::cli::kExitUsage);
  write("t.jsonl", "{\"t\":0,\"right\":{\"joints\":{\"wrist\":[0,0,0],\"palm\":[0,0,1]},\"poses\":[]}}\n");
  EXPECT_EQ(invoke({"replay", "--trace", path("t.jsonl"), "--recognizer", "lever"}).code, objestures::cli::kExitUsage);
}

TEST_F(CliTest, MalformedTraceExits2WithLine) {
  write("bad.jsonl",
        "{\"t\":0,\"right\":{\"joints\":{\"wrist\":[0,0,0],\"palm\":[0,0,1]},\"poses\":[]}}\n{oops\n");
  const auto r = invoke({"replay", "--trace", path("bad.jsonl"), "--recognizer", "linear"});
  EXPECT_EQ(r.code, objestures::cli::kExitParse);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"trace-validate", path("bad.jsonl")}).code, objestures::cli::kExitParse);
}

TEST_F(CliTest, BadConfigExits2) {
  write("c.cfg", "linear.bogus = 1\n");
  const auto r = invoke({"--config", path("c.cfg"), "simulate", "--kind", "slide"});
  EXPECT_EQ(r.code, objestures::cli::kExitParse);
}

TEST_F(CliTest, RecognizerFailureExits3) {
  // Thumbs-up confirmation while the tracked right hand lacks the index tip.
  write("t.jsonl",
        "{\"t\":0,\"left\":{\"joints\":{\"wrist\":[0,0,0],\"palm\":[0,0,1]},\"poses\":[\"ThumbsUp\"]},"
        "\"right\":{\"joints\":{\"wrist\":[0,0,0],\"palm\":[0,0,1]},\"poses\":[]}}\n");
  const auto r = invoke({"replay", "--trace", path("t.jsonl"), "--recognizer", "linear"});
  EXPECT_EQ(r.code, objestures::cli::kExitRuntime);
  EXPECT_NE(r.err.find("index_tip"), std::string::npos) << r.err;
}

TEST_F(CliTest, DialReplayMatchesGroundTruth) {
  write("id.cfg", "aema.alpha_min = 1\naema.alpha_max = 1\ngain.v_min = 1\ngain.v_max = 1\n");
  ASSERT_EQ(invoke({"--seed", "7", "--out", path("dial.jsonl"), "simulate", "--kind", "dial", "--turn", "90",
                 "--regrips", "1"})
                .code,
            0);
  EXPECT_TRUE(fs::exists(path("dial.jsonl.manifest.json")));
  const auto r = invoke({"--config", path("id.cfg"), "replay", "--trace", path("dial.jsonl"), "--recognizer",
                      "rotational"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto log = lines(r.out);
  ASSERT_FALSE(log.empty());
  const auto last = log.back();
  const auto pos = last.find("\"value\":");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(last.substr(pos + 8)), 1.5707963267948966, 1e-6);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  const auto a = invoke({"--seed", "7", "simulate", "--kind", "dial", "--turn", "90", "--jitter", "0.002"});
  const auto b = invoke({"--seed", "7", "simulate", "--kind", "dial", "--turn", "90", "--jitter", "0.002"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SessionHasTwentyFourValidTrials) {
  const auto r = invoke({"--seed", "1", "simulate", "--session", "--blocks", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 24u);
  // Re-derive the blocks from the lines and check the pairing rule.
  for (int b = 0; b < 3; ++b) {
    std::vector<std::string> types;
    for (int t = 0; t < 8; ++t) {
      const auto& l = out[static_cast<std::size_t>(b * 8 + t)];
      const auto task = l.find("\"Rotation\"") != std::string::npos ? "R" : "S";
      const auto dist = l.find("\"Near\"") != std::string::npos ? "N" : "F";
      types.push_back(std::string(dist) + task);
    }
    std::set<std::string> seen;
    for (int i = 0; i < 8; i += 2) {
      EXPECT_EQ(types[static_cast<std::size_t>(i)], types[static_cast<std::size_t>(i + 1)]);
      seen.insert(types[static_cast<std::size_t>(i)]);
    }
    EXPECT_EQ(seen.size(), 4u);
  }
}

TEST_F(CliTest, DropInvalidRemovesPlantedTrials) {
  ASSERT_EQ(invoke({"--seed", "3", "--out", path("log.jsonl"), "simulate", "--trial-log", "--participants", "2",
                 "--blocks", "1"})
                .code,
            0);
  auto records = read_trial_log_file(path("log.jsonl"));
  std::vector<AnnotatedTrial> annotated;
  for (const auto& r : records) annotated.push_back({r, compute_metrics(r)});
  for (const auto& t : filter_trials(annotated)) ASSERT_TRUE(t.metrics.valid);
  records[3].t_release = records[3].t_appear + 0.3;
  records[10].t_release = records[10].t_appear + 0.2;
  {
    std::ofstream f(path("planted.jsonl"), std::ios::binary);
    for (const auto& r : records) f << trial_to_line(r) << '\n';
  }
  const auto all = invoke({"metrics", "--log", path("planted.jsonl")});
  const auto kept = invoke({"metrics", "--log", path("planted.jsonl"), "--drop-invalid"});
  ASSERT_EQ(all.code, 0) << all.err;
  ASSERT_EQ(kept.code, 0) << kept.err;
  EXPECT_EQ(lines(all.out).size(), records.size() + 1);
  EXPECT_EQ(lines(all.out).size() - lines(kept.out).size(), 2u);
}

TEST_F(CliTest, EmptyLogExits2) {
  write("empty.jsonl", "");
  const auto r = invoke({"metrics", "--log", path("empty.jsonl")});
  EXPECT_EQ(r.code, objestures::cli::kExitParse);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, GroupingGivesCartesianGroups) {
  ASSERT_EQ(invoke({"--seed", "5", "--out", path("log.jsonl"), "simulate", "--trial-log", "--participants", "3",
                 "--blocks", "1"})
                .code,
            0);
  const auto r = invoke({"metrics", "--log", path("log.jsonl"), "--group-by", "approach,task,distance"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], "approach,task,distance,n,metric,mean,sd,log_mean");
  std::set<std::string> groups;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::size_t cut = 0;
    for (int c = 0; c < 3; ++c) cut = row.find(',', cut) + 1;
    groups.insert(row.substr(0, cut));
  }
  EXPECT_EQ(groups.size(), 12u);
  EXPECT_EQ(rows.size(), 1 + 12 * 3u);
}

TEST_F(CliTest, ParallelReplayKeepsArgumentOrder) {
  ASSERT_EQ(invoke({"--out", path("s.jsonl"), "simulate", "--kind", "slide"}).code, 0);
  const auto serial = invoke({"replay", "--trace", path("s.jsonl"), "--recognizer", "linear", "--recognizer",
                           "nonlinear", "--recognizer", "free"});
  const auto parallel = invoke({"--jobs", "3", "replay", "--trace", path("s.jsonl"), "--recognizer", "linear",
                             "--recognizer", "nonlinear", "--recognizer", "free"});
  ASSERT_EQ(serial.code, 0) << serial.err;
  EXPECT_EQ(serial.out, parallel.out);
}
