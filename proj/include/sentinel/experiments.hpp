#ifndef SENTINEL_EXPERIMENTS_HPP
#define SENTINEL_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sentinel/grammar.hpp"
#include "sentinel/immune.hpp"
#include "sentinel/report.hpp"
#include "sentinel/signals.hpp"

namespace sentinel {

// Sine experiment: a unit sine as self, 100 samples per period.
struct SineSetup {
  double amplitude = 1.0;
  double freq_hz = 1.0;
  double dt = 0.01;
  std::size_t samples = 1000;
  int bits = 8;
  int window = 7;
  double md = 0.2;
  std::size_t detectors = 30;
};

struct SineRun {
  SignalSeries self, shifted, composite;
  DetectorSet detectors;
  ImmuneMonitorResult on_self, on_shifted, on_composite;
};

SineRun run_sine(const SineSetup& setup, std::uint64_t seed);

// Synthetic motor. A load in [0, 1] sets both the stage amplitude,
// sqrt(1 + (amplitude_gain load)^2), and the slip, slip_base + slip_gain load.
struct MotorSetup {
  double supply_hz = 50.0;
  double dt = 1e-3;
  double modulation = 0.1;
  double amplitude_gain = 1.5;
  double slip_base = 0.002;
  double slip_gain = 0.04;

  LoadStage stage(double load, double duration_s) const;
  MotorScenario scenario(const std::vector<double>& loads, double duration_s,
                         bool broken_bar) const;

  /// Healthy training data: loads 0.05, 0.10, ..., 0.75 for 0.5 s each.
  MotorScenario normal() const;
  /// Unloaded healthy motor followed by a fully loaded broken bar, 2 s each.
  std::vector<MotorScenario> scenario_a() const;
  /// Broken bar under loads 0, 1/3, 2/3, 1, 2 s each.
  std::vector<MotorScenario> scenario_b() const;

  // Engine settings used with this setup.
  int immune_bits = 8;
  int immune_window = 7;
  double md = 0.2;
  std::size_t detectors = 30;
  int input_bits = 1;
  int output_bits = 5;
  std::size_t max_depth = 4;
  LanguageMonitorConfig language{50, 10.0};
};

/// Phase-a current, slip input and dq magnitude of consecutive scenarios.
struct MotorSeries {
  SignalSeries current, slip, dq;
  std::vector<std::size_t> stage_lengths;
};

MotorSeries synthesize(const std::vector<MotorScenario>& parts, double dt, std::uint64_t seed = 0);

DetectorSet train_motor_detectors(const MotorSetup& setup, const MotorSeries& normal,
                                  std::uint64_t seed);
Grammar train_motor_grammar(const MotorSetup& setup, const MotorSeries& normal);

/// Runs `sine-suite` or `motor-suite`, writing series, models, reports and a
/// summary into out_dir. Returns the summary.
Report run_experiment(const std::string& name, const std::filesystem::path& out_dir,
                      std::uint64_t seed);

}  // namespace sentinel

#endif  // SENTINEL_EXPERIMENTS_HPP
