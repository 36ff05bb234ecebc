#include "sentinel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>

#include "sentinel/encoding.hpp"
#include "sentinel/experiments.hpp"
#include "sentinel/format.hpp"
#include "sentinel/io.hpp"
#include "sentinel/report.hpp"

namespace sentinel {

namespace {

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level_from_env() {
  const char* v = std::getenv("SENTINEL_LOG");
  if (!v) return LogLevel::error;
  const std::string s = v;
  if (s == "debug") return LogLevel::debug;
  if (s == "info") return LogLevel::info;
  return LogLevel::error;
}

struct Log {
  std::ostream& err;
  LogLevel level;

  void info(const std::string& msg) const {
    if (level >= LogLevel::info) err << "[info] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level >= LogLevel::debug) err << "[debug] " << msg << '\n';
  }
};

/// `x.csv` -> `x<suffix>` next to the input.
std::filesystem::path sibling(const std::filesystem::path& input, const std::string& suffix) {
  std::filesystem::path p = input;
  p.replace_extension();
  p += suffix;
  return p;
}

LoadStage parse_stage(const std::string& spec) {
  // duration:amplitude:slip
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(std::stod(spec.substr(start, colon - start)));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3)
    throw std::invalid_argument("stage must be duration:amplitude:slip, got '" + spec + "'");
  return {parts[0], parts[1], parts[2]};
}

struct GenOptions {
  std::string kind;
  double amp = 1.0;
  double freq = 1.0;
  std::optional<double> dt;
  std::size_t n = 1000;
  std::vector<double> loads;
  std::vector<std::string> stages;
  double duration = 2.0;
  bool broken_bar = false;
  double modulation = 0.1;
  double supply = 50.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  bool paired = false;
  std::string output;
};

int cmd_gen(const GenOptions& o, const Log& log, std::ostream& out) {
  if (o.kind != "motor") {
    const SignalSeries s = gen_signal(parse_signal_kind(o.kind), o.amp, o.freq, o.dt.value_or(0.01), o.n);
    write_series(o.output, s);
    out << "wrote " << s.size() << " samples to " << o.output << '\n';
    return kExitNormal;
  }

  MotorSetup setup;
  setup.supply_hz = o.supply;
  setup.modulation = o.modulation;
  MotorScenario sc = setup.scenario(o.loads, o.duration, o.broken_bar);
  for (const auto& spec : o.stages) sc.load_stages.push_back(parse_stage(spec));
  sc.noise_std = o.noise;
  const double dt = o.dt.value_or(setup.dt);
  const MotorSeries m = synthesize({sc}, dt, o.seed);
  if (o.paired)
    write_paired_series(o.output, m.slip, m.dq);
  else
    write_series(o.output, m.current);
  log.info("stage lengths: " + nlohmann::json(m.stage_lengths).dump());
  out << "wrote " << m.current.size() << " samples to " << o.output << '\n';
  return kExitNormal;
}

struct TrainImmuneOptions {
  std::string self;
  int bits = 8;
  int window = 7;
  double md = 0.2;
  std::size_t detectors = 30;
  std::uint64_t seed = 0;
  bool take_abs = false;
  double margin = 0.05;
  std::size_t max_attempts = 0;
  std::optional<double> dt;
  std::string output;
};

int cmd_train_immune(const TrainImmuneOptions& o, const Log& log, std::ostream& out) {
  const SignalSeries self = read_series(o.self, o.dt);
  const EncodingConfig cfg = fit_encoding(self, o.bits, o.window, o.take_abs, o.margin);
  ImmuneParams params;
  params.detectors = o.detectors;
  params.md = o.md;
  params.seed = o.seed;
  params.max_attempts = o.max_attempts;
  const auto windows = make_windows(self, cfg);
  log.info("self windows: " + std::to_string(windows.size()));
  const DetectorSet ds = generate_detectors(windows, params, cfg);
  write_json(o.output, to_json(ds));
  out << "generated " << ds.detectors.size() << " detectors (threshold "
      << format_number(ds.threshold()) << ") -> " << o.output << '\n';
  return kExitNormal;
}

struct MonitorOptions {
  std::string input;
  std::string model;
  std::string report;
  std::string events;
  std::vector<std::size_t> stage_lengths;
  std::optional<double> dt;
  // grammar only
  double threshold = 10.0;
  std::size_t word_length = 50;
  double substitute = 1.0;
  double insert = 1.0;
  double remove = 1.0;
  bool stages_from_input = false;
};

void finish_monitor(const MonitorOptions& o, const Report& report, const std::string& events,
                    std::ostream& out) {
  const std::filesystem::path report_path =
      o.report.empty() ? sibling(o.input, ".report.json") : std::filesystem::path(o.report);
  const std::filesystem::path events_path =
      o.events.empty() ? sibling(o.input, ".events.csv") : std::filesystem::path(o.events);
  write_json(report_path, report);
  write_text(events_path, events);
  const auto& summary = report["summary"];
  out << "verdict: " << report["verdict"].get<std::string>() << " ("
      << summary["total_events"].dump() << " events, first detection "
      << (summary["first_detection"].is_null() ? std::string("none")
                                               : summary["first_detection"].dump())
      << ")\n";
}

int cmd_monitor_immune(const MonitorOptions& o, const Log& log, std::ostream& out) {
  const DetectorSet ds = detector_set_from_json(read_json(o.model));
  const SignalSeries series = read_series(o.input, o.dt);
  const ImmuneMonitorResult result = monitor(series, ds);
  log.info("windows: " + std::to_string(result.windows) +
           ", clamped samples: " + std::to_string(result.clamps.total()));
  const Report report = immune_report(ds, result, std::filesystem::path(o.input).filename().string(),
                                      o.stage_lengths);
  finish_monitor(o, report, immune_events_csv(result), out);
  return result.abnormal() ? kExitFault : kExitNormal;
}

struct TrainGrammarOptions {
  std::vector<std::string> inputs;
  int input_bits = 1;
  int output_bits = 5;
  std::size_t max_depth = 4;
  double margin = 0.05;
  std::optional<double> dt;
  std::string output;
};

int cmd_train_grammar(const TrainGrammarOptions& o, const Log& log, std::ostream& out) {
  std::vector<SignalSeries> us, ys;
  for (const auto& path : o.inputs) {
    auto [u, y] = read_paired_series(path, o.dt);
    us.push_back(std::move(u));
    ys.push_back(std::move(y));
  }
  // One scale for every sample, fitted over all of them.
  const EncodingConfig in_cfg = fit_encoding(concat(us), o.input_bits, 1, false, o.margin);
  const EncodingConfig out_cfg = fit_encoding(concat(ys), o.output_bits, 1, false, o.margin);
  Grammar g(in_cfg, out_cfg, o.max_depth);
  for (std::size_t i = 0; i < us.size(); ++i) {
    const CodifiedSample s = codify_series(us[i], ys[i], in_cfg, out_cfg);
    g.learn(s.nonterminals, s.terminals);
    log.debug(o.inputs[i] + ": " + std::to_string(s.terminals.size()) + " symbols");
  }
  write_json(o.output, to_json(g));
  out << "inferred " << g.size() << " productions (max depth " << o.max_depth << ") -> "
      << o.output << '\n';
  return kExitNormal;
}

int cmd_monitor_grammar(const MonitorOptions& o, const Log& log, std::ostream& out) {
  const Grammar g = grammar_from_json(read_json(o.model));
  const auto [u, y] = read_paired_series(o.input, o.dt);
  const LanguageMonitorConfig mcfg{o.word_length, o.threshold};
  const EditCosts costs{o.substitute, o.insert, o.remove};
  const LanguageMonitorResult result = monitor_language(g, u, y, mcfg, costs);
  std::vector<std::size_t> stages = o.stage_lengths;
  if (stages.empty() && o.stages_from_input) stages = constant_runs(u.samples);
  log.info("words: " + std::to_string(result.distances.size()));
  const Report report = grammar_report(g, result, mcfg, costs,
                                       std::filesystem::path(o.input).filename().string(), stages);
  finish_monitor(o, report, grammar_events_csv(result, mcfg), out);
  return result.abnormal() ? kExitFault : kExitNormal;
}

struct ReportOptions {
  std::string input;
  std::string text;
  std::string plot;
};

int cmd_report(const ReportOptions& o, std::ostream& out) {
  const nlohmann::json report = read_json(o.input);
  const std::string text = render_text(report);
  if (o.text.empty())
    out << text;
  else
    write_text(o.text, text);
  if (!o.plot.empty()) write_text(o.plot, render_plot_csv(report));
  return kExitNormal;
}

struct ExperimentOptions {
  std::string name;
  std::string out_dir;
  std::uint64_t seed = 0;
};

int cmd_experiment(const ExperimentOptions& o, std::ostream& out) {
  const Report summary = run_experiment(o.name, o.out_dir, o.seed);
  out << summary.dump(2) << '\n';
  return kExitNormal;
}

void add_monitor_outputs(CLI::App* sub, MonitorOptions& o) {
  sub->add_option("--in", o.input, "Series to monitor")->required()->check(CLI::ExistingFile);
  sub->add_option("--model", o.model, "Trained model JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--report", o.report, "Report JSON (default: <in>.report.json)");
  sub->add_option("--events", o.events, "Event CSV (default: <in>.events.csv)");
  sub->add_option("--stage-lengths", o.stage_lengths, "Samples per stage, for per-stage summaries")
      ->delimiter(',');
  sub->add_option("--dt", o.dt, "Sample period when the file has no time column");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Log log{err, log_level_from_env()};

  CLI::App app{"Negative-selection and grammatical-inference fault detection", "sentinel"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a test signal or synthetic motor current");
  g->add_option("kind", gen.kind, "sine | freq_shifted | composite | motor")
      ->required()
      ->check(CLI::IsMember({"sine", "freq_shifted", "composite", "motor"}));
  g->add_option("--amp", gen.amp, "Amplitude");
  g->add_option("--freq", gen.freq, "Base frequency, Hz");
  g->add_option("--dt", gen.dt, "Sample period, s (default 0.01, motor 0.001)");
  g->add_option("--n", gen.n, "Number of samples")->check(CLI::PositiveNumber);
  g->add_option("--loads", gen.loads, "Motor: load per stage in [0, 1]")->delimiter(',');
  g->add_option("--stage", gen.stages, "Motor: explicit stage duration:amplitude:slip");
  g->add_option("--duration", gen.duration, "Motor: seconds per --loads stage");
  g->add_flag("--broken-bar", gen.broken_bar, "Motor: apply broken-bar modulation");
  g->add_option("--modulation", gen.modulation, "Motor: modulation depth");
  g->add_option("--supply", gen.supply, "Motor: supply frequency, Hz");
  g->add_option("--noise", gen.noise, "Motor: gaussian noise std");
  g->add_option("--seed", gen.seed, "Motor: noise seed");
  g->add_flag("--paired", gen.paired, "Motor: write time,u,y with slip and dq magnitude");
  g->add_option("-o,--output", gen.output, "Output CSV")->required();

  TrainImmuneOptions ti;
  auto* t = app.add_subcommand("train-immune", "Generate a detector set from self data");
  t->add_option("--self", ti.self, "Self series CSV")->required()->check(CLI::ExistingFile);
  t->add_option("--bits", ti.bits, "Quantization bits")->check(CLI::Range(1, 16));
  t->add_option("--window", ti.window, "Window length")->check(CLI::PositiveNumber);
  t->add_option("--md", ti.md, "Matching fraction of the hypercube diagonal");
  t->add_option("--detectors", ti.detectors, "Number of detectors")->check(CLI::PositiveNumber);
  t->add_option("--seed", ti.seed, "Generator seed")->required();
  t->add_flag("--abs", ti.take_abs, "Encode absolute values");
  t->add_option("--margin", ti.margin, "Range headroom as a fraction of the data range");
  t->add_option("--max-attempts", ti.max_attempts, "Candidate budget (default 10000 per detector)");
  t->add_option("--dt", ti.dt, "Sample period when the file has no time column");
  t->add_option("-o,--output", ti.output, "Detector set JSON")->required();

  MonitorOptions mi;
  auto* m = app.add_subcommand("monitor-immune", "Monitor a series with a detector set");
  add_monitor_outputs(m, mi);

  TrainGrammarOptions tg;
  auto* tgr = app.add_subcommand("train-grammar", "Infer a grammar from time,u,y samples");
  tgr->add_option("--in", tg.inputs, "Training samples (time,u,y)")
      ->required()
      ->check(CLI::ExistingFile);
  tgr->add_option("--input-bits", tg.input_bits, "Bits for u")->check(CLI::Range(1, 16));
  tgr->add_option("--output-bits", tg.output_bits, "Bits for y")->check(CLI::Range(1, 16));
  tgr->add_option("--max-depth", tg.max_depth, "Deepest production context");
  tgr->add_option("--margin", tg.margin, "Range headroom as a fraction of the data range");
  tgr->add_option("--dt", tg.dt, "Sample period when the file has no time column");
  tgr->add_option("-o,--output", tg.output, "Grammar JSON")->required();

  MonitorOptions mg;
  auto* mgr = app.add_subcommand("monitor-grammar", "Monitor time,u,y data with a grammar");
  add_monitor_outputs(mgr, mg);
  mgr->add_option("--threshold", mg.threshold, "Fault threshold on word distance");
  mgr->add_option("--word-length", mg.word_length, "Symbols per word")->check(CLI::PositiveNumber);
  mgr->add_option("--substitute", mg.substitute, "Substitution cost");
  mgr->add_option("--insert", mg.insert, "Insertion cost");
  mgr->add_option("--delete", mg.remove, "Deletion cost");
  mgr->add_flag("--stages-from-input", mg.stages_from_input,
                "Treat runs of constant u as stages");

  ReportOptions ro;
  auto* r = app.add_subcommand("report", "Render a monitor report");
  r->add_option("--in", ro.input, "Report JSON")->required()->check(CLI::ExistingFile);
  r->add_option("--text", ro.text, "Write text here instead of stdout");
  r->add_option("--plot", ro.plot, "Plot-ready x,y CSV");

  ExperimentOptions eo;
  auto* e = app.add_subcommand("experiment", "Run a reference experiment end to end");
  e->add_option("name", eo.name, "sine-suite | motor-suite")
      ->required()
      ->check(CLI::IsMember({"sine-suite", "motor-suite"}));
  e->add_option("--out-dir", eo.out_dir, "Output directory")->required();
  e->add_option("--seed", eo.seed, "Detector seed")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitNormal : kExitError;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, log, out);
    if (t->parsed()) return cmd_train_immune(ti, log, out);
    if (m->parsed()) return cmd_monitor_immune(mi, log, out);
    if (tgr->parsed()) return cmd_train_grammar(tg, log, out);
    if (mgr->parsed()) return cmd_monitor_grammar(mg, log, out);
    if (r->parsed()) return cmd_report(ro, out);
    if (e->parsed()) return cmd_experiment(eo, out);
  } catch (const DetectorExhaustion& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  } catch (const nlohmann::json::exception& ex) {
    err << "error: malformed artifact: " << ex.what() << '\n';
    return kExitError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace sentinel
