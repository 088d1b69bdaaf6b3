#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "objestures/config.hpp"
#include "objestures/error.hpp"
#include "objestures/event_log.hpp"
#include "objestures/metrics.hpp"
#include "objestures/simulator.hpp"
#include "objestures/study.hpp"
#include "objestures/synthetic_log.hpp"
#include "objestures/trace.hpp"

namespace objestures::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  unsigned jobs = 1;
};

struct ReplayOptionsCli {
  std::string trace_path;
  std::vector<std::string> recognizers;
  bool classify = false;
};

struct SimulateOptions {
  std::string kind;
  bool session = false;
  bool trial_log = false;
  double duration = 1.0;
  double rate = kDefaultFrameRate;
  double jitter = 0.0;
  double turn = 90.0;
  int regrips = 0;
  std::vector<double> turns;
  std::optional<double> reentry;
  double depth = 0.5;
  int taps = 3;
  double hold = 3.5;
  std::string hand = "right";
  int blocks = 3;
  int participants = 12;
};

struct MetricsOptions {
  std::string log_path;
  bool drop_invalid = false;
  bool drop_outliers = false;
  std::vector<std::string> group_by;
};

EngineConfig load_engine_config(const GlobalOptions& g) {
  return g.config_path.empty() ? EngineConfig{} : load_config(g.config_path);
}

/// Writes `content` to --out (plus a manifest) or to `out`.
void emit(const GlobalOptions& g, const std::string& content, std::ostream& out,
          const nlohmann::json& manifest) {
  if (g.out_path.empty()) {
    out << content;
    return;
  }
  {
    std::ofstream file(g.out_path, std::ios::binary);
    if (!file) throw std::runtime_error(fmt::format("cannot write '{}'", g.out_path));
    file << content;
  }
  std::ofstream file(g.out_path + ".manifest.json", std::ios::binary);
  file << manifest.dump(2) << '\n';
  if (!file) throw std::runtime_error(fmt::format("cannot write '{}.manifest.json'", g.out_path));
}

nlohmann::json base_manifest(std::string_view subcommand, const GlobalOptions& g,
                             const std::vector<std::string>& args) {
  nlohmann::json m;
  m["tool"] = "objestures";
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  m["config"] = g.config_path;
  m["seed"] = g.seed;
  m["out"] = g.out_path;
  m["args"] = args;
  return m;
}

int run_replay(const GlobalOptions& g, const ReplayOptionsCli& o, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err) {
  std::vector<RecognizerKind> kinds;
  for (const auto& name : o.recognizers) {
    auto kind = recognizer_from_string(name);
    if (!kind) throw UsageError(fmt::format("unknown recognizer '{}'", name));
    kinds.push_back(*kind);
  }

  EngineConfig cfg;
  Trace trace;
  try {
    cfg = load_engine_config(g);
    trace = read_trace_file(o.trace_path);
  } catch (const Error& e) {
    err << "objestures replay: " << e.what() << '\n';
    return kExitParse;
  }

  // One independent recognizer per kind; outputs are concatenated in argument order.
  std::vector<std::string> logs(kinds.size());
  std::vector<std::string> failures(kinds.size());
  auto work = [&](std::size_t i) {
    try {
      auto recognizer = make_recognizer(kinds[i], cfg);
      std::ostringstream log;
      replay(trace, *recognizer, cfg, log, {o.classify});
      logs[i] = log.str();
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min<std::size_t>(g.jobs, kinds.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < kinds.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < kinds.size(); i += jobs) work(i);
      });
    }
  }
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (!failures[i].empty()) {
      err << "objestures replay: " << to_string(kinds[i]) << ": " << failures[i] << '\n';
      return kExitRuntime;
    }
  }

  std::string content;
  for (const auto& log : logs) content += log;
  auto manifest = base_manifest("replay", g, args);
  manifest["inputs"] = {o.trace_path};
  manifest["recognizers"] = o.recognizers;
  manifest["classify_poses"] = o.classify;
  emit(g, content, out, manifest);
  return kExitOk;
}

int run_simulate(const GlobalOptions& g, const SimulateOptions& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  const int modes = int(!o.kind.empty()) + int(o.session) + int(o.trial_log);
  if (modes != 1) throw UsageError("simulate needs exactly one of --kind, --session, --trial-log");

  SplitMix64 rng(g.seed);
  std::ostringstream content;
  auto manifest = base_manifest("simulate", g, args);

  if (o.session) {
    if (o.blocks < 1) throw UsageError("--blocks must be >= 1");
    const auto blocks = gen_session(o.blocks, rng);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t j = 0; j < blocks[b].trials.size(); ++j) {
        content << block_trial_line(int(b) + 1, int(j) + 1, blocks[b].trials[j]) << '\n';
      }
    }
    manifest["mode"] = "session";
  } else if (o.trial_log) {
    SyntheticLogParams params;
    params.participants = o.participants;
    params.blocks = o.blocks;
    std::vector<TrialRecord> log;
    try {
      log = synthesize_trial_log(params, rng);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    for (const auto& r : log) content << trial_to_line(r) << '\n';
    manifest["mode"] = "trial-log";
  } else {
    ScenarioParams p;
    auto kind = scenario_from_string(o.kind);
    if (!kind) throw UsageError(fmt::format("unknown scenario kind '{}'", o.kind));
    auto hand = handedness_from_string(o.hand);
    if (!hand) throw UsageError(fmt::format("unknown hand '{}'", o.hand));
    p.kind = *kind;
    p.hand = *hand;
    p.duration = o.duration;
    p.rate = o.rate;
    p.jitter_sigma = o.jitter;
    p.seed = g.seed;
    p.reentry = o.reentry;
    p.depth = o.depth;
    p.taps = o.taps;
    p.hold = o.hold;
    try {
      p.turns_deg = o.turns.empty() ? split_turn(o.turn, o.regrips) : o.turns;
      write_trace(gen_trace(p), content);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    manifest["mode"] = "trace";
    manifest["kind"] = o.kind;
  }
  emit(g, content.str(), out, manifest);
  return kExitOk;
}

int run_metrics(const GlobalOptions& g, const MetricsOptions& o, const std::vector<std::string>& args,
                std::ostream& out, std::ostream& err) {
  std::vector<GroupKey> keys;
  for (const auto& name : o.group_by) {
    auto key = group_key_from_string(name);
    if (!key) throw UsageError(fmt::format("unknown group key '{}'", name));
    keys.push_back(*key);
  }

  std::vector<TrialRecord> records;
  try {
    records = read_trial_log_file(o.log_path);
  } catch (const Error& e) {
    err << "objestures metrics: " << e.what() << '\n';
    return kExitParse;
  }

  std::vector<AnnotatedTrial> trials;
  trials.reserve(records.size());
  for (auto& r : records) {
    TrialMetrics m = compute_metrics(r);
    trials.push_back({std::move(r), m});
  }
  trials = filter_trials(std::move(trials));

  const DropPolicy policy{o.drop_invalid, o.drop_outliers};
  std::size_t invalid = 0, outliers = 0, dropped = 0;
  for (const auto& t : trials) {
    invalid += !t.metrics.valid;
    outliers += t.metrics.outlier;
    dropped += !policy.keeps(t.metrics);
  }
  err << fmt::format("objestures metrics: {} trials, {} invalid, {} outliers, {} dropped\n",
                     trials.size(), invalid, outliers, dropped);

  std::ostringstream csv;
  if (keys.empty()) {
    write_trials_csv(trials, policy, csv);
  } else {
    const Summary summary = summarize(trials, keys, policy);
    for (const auto& group : summary.empty_groups) {
      std::string label;
      for (const auto& v : group) label += (label.empty() ? "" : "/") + v;
      err << "objestures metrics: empty group " << label << '\n';
    }
    write_summary_csv(summary, keys, csv);
  }

  auto manifest = base_manifest("metrics", g, args);
  manifest["inputs"] = {o.log_path};
  manifest["group_by"] = o.group_by;
  manifest["drop_invalid"] = o.drop_invalid;
  manifest["drop_outliers"] = o.drop_outliers;
  emit(g, csv.str(), out, manifest);
  return kExitOk;
}

int run_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const Trace trace = read_trace_file(path);
    out << fmt::format("ok: {} frames, t=[{}, {}], rate={}\n", trace.frames.size(),
                       format_decimal(trace.frames.front().t), format_decimal(trace.frames.back().t),
                       format_decimal(trace.nominal_rate));
    return kExitOk;
  } catch (const Error& e) {
    err << "objestures trace-validate: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hand-tracking interaction engine: replay, simulate, metrics", "objestures"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Engine configuration file");
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--out", g.out_path, "Output file (a .manifest.json is written next to it)");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  ReplayOptionsCli ro;
  auto* replay_cmd = app.add_subcommand("replay", "Run recognizers over a trace, emit an event log");
  replay_cmd->fallthrough();
  replay_cmd->add_option("--trace", ro.trace_path, "Trace file")->required();
  replay_cmd->add_option("--recognizer", ro.recognizers,
                         "binary, linear, rotational, nonlinear or free (repeatable)")
      ->required();
  replay_cmd->add_flag("--classify-poses", ro.classify, "Fill empty pose sets geometrically");

  SimulateOptions so;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate traces, trial blocks or trial logs");
  simulate_cmd->fallthrough();
  simulate_cmd->add_option("--kind", so.kind, "slide, dial, squeeze, free or binary");
  simulate_cmd->add_flag("--session", so.session, "Emit counterbalanced trial blocks");
  simulate_cmd->add_flag("--trial-log", so.trial_log, "Emit a synthetic trial log");
  simulate_cmd->add_option("--duration", so.duration, "Scripted motion seconds");
  simulate_cmd->add_option("--rate", so.rate, "Frames per second");
  simulate_cmd->add_option("--jitter", so.jitter, "Gaussian joint jitter sigma, meters");
  simulate_cmd->add_option("--turn", so.turn, "Dial: total turn, degrees");
  simulate_cmd->add_option("--regrips", so.regrips, "Dial: number of re-grips");
  simulate_cmd->add_option("--turns", so.turns, "Dial: explicit per-grip turns, degrees")
      ->delimiter(',');
  simulate_cmd->add_option("--reentry", so.reentry, "Slide: re-entry position in [0,1)");
  simulate_cmd->add_option("--depth", so.depth, "Squeeze: final reach fraction");
  simulate_cmd->add_option("--taps", so.taps, "Binary: number of taps");
  simulate_cmd->add_option("--hold", so.hold, "Free: seconds held still around the drag");
  simulate_cmd->add_option("--hand", so.hand, "Tracked hand: left or right");
  simulate_cmd->add_option("--blocks", so.blocks, "Session/trial log: blocks");
  simulate_cmd->add_option("--participants", so.participants, "Trial log: participants");

  MetricsOptions mo;
  auto* metrics_cmd = app.add_subcommand("metrics", "Compute trial metrics and summaries as CSV");
  metrics_cmd->fallthrough();
  metrics_cmd->add_option("--log", mo.log_path, "Trial log")->required();
  metrics_cmd->add_flag("--drop-invalid", mo.drop_invalid, "Exclude invalid trials");
  metrics_cmd->add_flag("--drop-outliers", mo.drop_outliers, "Exclude outliers");
  metrics_cmd->add_option("--group-by", mo.group_by,
                          "participant, approach, task, distance, block")
      ->delimiter(',');

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("trace-validate", "Check a trace file");
  validate_cmd->fallthrough();
  validate_cmd->add_option("trace", validate_path, "Trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // A bad --config is an input error for every subcommand, not only replay.
    if (!*replay_cmd) load_engine_config(g);
    if (*replay_cmd) return run_replay(g, ro, args, out, err);
    if (*simulate_cmd) return run_simulate(g, so, args, out);
    if (*metrics_cmd) return run_metrics(g, mo, args, out, err);
    if (*validate_cmd) return run_validate(validate_path, out, err);
  } catch (const UsageError& e) {
    err << "objestures: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "objestures: " << e.what() << '\n';
    return e.code() == Errc::ParseError || e.code() == Errc::InvalidConfig ? kExitParse
                                                                             : kExitRuntime;
  } catch (const std::exception& e) {
    err << "objestures: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace objestures::cli
