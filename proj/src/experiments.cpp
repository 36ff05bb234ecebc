#include "sentinel/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "sentinel/encoding.hpp"
#include "sentinel/format.hpp"
#include "sentinel/io.hpp"

namespace sentinel {

namespace {

ImmuneParams immune_params(std::size_t detectors, double md, std::uint64_t seed) {
  ImmuneParams p;
  p.detectors = detectors;
  p.md = md;
  p.seed = seed;
  return p;
}

Report sine_suite(const std::filesystem::path& dir, std::uint64_t seed) {
  const SineSetup setup;
  const SineRun run = run_sine(setup, seed);

  write_series(dir / "self.csv", run.self);
  write_series(dir / "freq_shifted.csv", run.shifted);
  write_series(dir / "composite.csv", run.composite);
  write_json(dir / "detectors.json", to_json(run.detectors));

  Report summary{{"experiment", "sine-suite"}, {"seed", seed}};
  Report monitors = Report::object();
  const std::pair<const char*, const ImmuneMonitorResult*> results[] = {
      {"self", &run.on_self}, {"freq_shifted", &run.on_shifted}, {"composite", &run.on_composite}};
  for (const auto& [name, result] : results) {
    const std::string stem = std::string("immune_") + name;
    const Report report = immune_report(run.detectors, *result, std::string(name) + ".csv");
    write_json(dir / (stem + ".report.json"), report);
    write_text(dir / (stem + ".events.csv"), immune_events_csv(*result));
    monitors[name] = {{"events", result->events.size()},
                      {"first_detection", report["summary"]["first_detection"]},
                      {"verdict", report["verdict"]}};
  }
  summary["detectors"] = run.detectors.detectors.size();
  summary["threshold"] = round_sig9(run.detectors.threshold());
  summary["monitors"] = std::move(monitors);
  return summary;
}

Report motor_suite(const std::filesystem::path& dir, std::uint64_t seed) {
  const MotorSetup setup;
  const MotorSeries normal = synthesize({setup.normal()}, setup.dt);
  const MotorSeries a = synthesize(setup.scenario_a(), setup.dt);
  const MotorSeries b = synthesize(setup.scenario_b(), setup.dt);

  const DetectorSet ds = train_motor_detectors(setup, normal, seed);
  const Grammar grammar = train_motor_grammar(setup, normal);
  write_json(dir / "detectors.json", to_json(ds));
  write_json(dir / "grammar.json", to_json(grammar));

  Report summary{{"experiment", "motor-suite"}, {"seed", seed}};
  const std::pair<const char*, const MotorSeries*> data[] = {
      {"normal", &normal}, {"scenario_a", &a}, {"scenario_b", &b}};
  for (const auto& [name, series] : data) {
    const std::string n = name;
    write_series(dir / (n + "_current.csv"), series->current);
    write_paired_series(dir / (n + "_dq.csv"), series->slip, series->dq);
    if (n == "normal") continue;

    const ImmuneMonitorResult im = monitor(series->current, ds);
    const Report ir = immune_report(ds, im, n + "_current.csv", series->stage_lengths);
    write_json(dir / ("immune_" + n + ".report.json"), ir);
    write_text(dir / ("immune_" + n + ".events.csv"), immune_events_csv(im));

    const EditCosts costs;
    const LanguageMonitorResult gm =
        monitor_language(grammar, series->slip, series->dq, setup.language, costs);
    const Report gr =
        grammar_report(grammar, gm, setup.language, costs, n + "_dq.csv", series->stage_lengths);
    write_json(dir / ("grammar_" + n + ".report.json"), gr);
    write_text(dir / ("grammar_" + n + ".events.csv"), grammar_events_csv(gm, setup.language));

    summary[n] = {{"immune",
                   {{"events", im.events.size()},
                    {"stage_events", ir["summary"]["stage_events"]},
                    {"verdict", ir["verdict"]}}},
                  {"grammar",
                   {{"faults", gm.faults.size()},
                    {"stage_mean_distance", gr["summary"]["stage_mean_distance"]},
                    {"verdict", gr["verdict"]}}}};
  }
  return summary;
}

}  // namespace

SineRun run_sine(const SineSetup& s, std::uint64_t seed) {
  SineRun run;
  run.self = gen_signal(SignalKind::sine, s.amplitude, s.freq_hz, s.dt, s.samples);
  run.shifted = gen_signal(SignalKind::freq_shifted, s.amplitude, s.freq_hz, s.dt, s.samples);
  run.composite = gen_signal(SignalKind::composite, s.amplitude, s.freq_hz, s.dt, s.samples);

  const EncodingConfig cfg = fit_encoding(run.self, s.bits, s.window, false);
  run.detectors = generate_detectors(make_windows(run.self, cfg),
                                     immune_params(s.detectors, s.md, seed), cfg);
  run.on_self = monitor(run.self, run.detectors);
  run.on_shifted = monitor(run.shifted, run.detectors);
  run.on_composite = monitor(run.composite, run.detectors);
  return run;
}

LoadStage MotorSetup::stage(double load, double duration_s) const {
  const double k = amplitude_gain * load;
  return {duration_s, std::sqrt(1.0 + k * k), slip_base + slip_gain * load};
}

MotorScenario MotorSetup::scenario(const std::vector<double>& loads, double duration_s,
                                   bool broken_bar) const {
  MotorScenario sc;
  sc.supply_frequency_hz = supply_hz;
  sc.broken_bar = broken_bar;
  sc.modulation_depth = broken_bar ? modulation : 0.0;
  for (double load : loads) sc.load_stages.push_back(stage(load, duration_s));
  return sc;
}

MotorScenario MotorSetup::normal() const {
  std::vector<double> loads;
  for (int i = 1; i <= 15; ++i) loads.push_back(0.05 * i);
  return scenario(loads, 0.5, false);
}

std::vector<MotorScenario> MotorSetup::scenario_a() const {
  return {scenario({0.0}, 2.0, false), scenario({1.0}, 2.0, true)};
}

std::vector<MotorScenario> MotorSetup::scenario_b() const {
  return {scenario({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}, 2.0, true)};
}

MotorSeries synthesize(const std::vector<MotorScenario>& parts, double dt, std::uint64_t seed) {
  if (parts.empty()) throw std::invalid_argument("nothing to synthesize");
  std::vector<SignalSeries> current, slip, dq;
  MotorSeries out;
  for (const MotorScenario& sc : parts) {
    const ThreePhaseCurrents phases = gen_three_phase_current(sc, dt, seed);
    current.push_back(phases.a);
    slip.push_back(gen_slip_profile(sc, dt));
    dq.push_back(dq_magnitude(phases, sc));
    for (std::size_t n : sc.stage_lengths(dt)) out.stage_lengths.push_back(n);
  }
  out.current = concat(current, "current");
  out.slip = concat(slip, "slip");
  out.dq = concat(dq, "dq_magnitude");
  return out;
}

DetectorSet train_motor_detectors(const MotorSetup& setup, const MotorSeries& normal,
                                  std::uint64_t seed) {
  const EncodingConfig cfg =
      fit_encoding(normal.current, setup.immune_bits, setup.immune_window, true);
  return generate_detectors(make_windows(normal.current, cfg),
                            immune_params(setup.detectors, setup.md, seed), cfg);
}

Grammar train_motor_grammar(const MotorSetup& setup, const MotorSeries& normal) {
  const EncodingConfig in_cfg = fit_encoding(normal.slip, setup.input_bits, 1, false);
  const EncodingConfig out_cfg = fit_encoding(normal.dq, setup.output_bits, 1, false);
  const CodifiedSample sample = codify_series(normal.slip, normal.dq, in_cfg, out_cfg);
  return infer_grammar(sample.nonterminals, sample.terminals, setup.max_depth, in_cfg, out_cfg);
}

Report run_experiment(const std::string& name, const std::filesystem::path& out_dir,
                      std::uint64_t seed) {
  Report summary;
  if (name == "sine-suite")
    summary = sine_suite(out_dir, seed);
  else if (name == "motor-suite")
    summary = motor_suite(out_dir, seed);
  else
    throw std::invalid_argument("unknown experiment: " + name);
  summary = round_numbers(summary);
  write_json(out_dir / "summary.json", summary);
  return summary;
}

}  // namespace sentinel
