#ifndef SENTINEL_SIGNALS_HPP
#define SENTINEL_SIGNALS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sentinel {

/// Uniformly sampled real-valued time series.
struct SignalSeries {
  double dt = 1.0;
  std::vector<double> samples;
  std::string label;

  std::size_t size() const { return samples.size(); }

  /// Throws std::invalid_argument unless dt > 0, the series is non-empty and
  /// every sample is finite.
  void validate() const;
};

/// Concatenates series sharing one sample period.
SignalSeries concat(const std::vector<SignalSeries>& parts, std::string label = {});

enum class SignalKind { sine, freq_shifted, composite };

SignalKind parse_signal_kind(const std::string& name);
std::string to_string(SignalKind kind);

/// Test signals sampled at t = k*dt:
///   sine          A sin(2 pi f t)
///   freq_shifted  A sin(2 pi 1.1f t)
///   composite     0.5A sin(2 pi f t) + 0.5A sin(4 pi f t)
SignalSeries gen_signal(SignalKind kind, double amplitude, double base_freq_hz, double dt,
                        std::size_t n);

struct LoadStage {
  double duration_s = 1.0;
  double amplitude = 1.0;
  double slip = 0.0;
};

struct MotorScenario {
  double supply_frequency_hz = 50.0;
  std::vector<LoadStage> load_stages;
  bool broken_bar = false;
  double modulation_depth = 0.0;
  double noise_std = 0.0;

  void validate() const;
  /// Modulation depth actually applied (0 unless broken_bar).
  double effective_modulation() const { return broken_bar ? modulation_depth : 0.0; }
  /// Samples per stage for the given period.
  std::vector<std::size_t> stage_lengths(double dt) const;
};

/// Single stator phase current with broken-bar sideband modulation:
/// i(t) = A (1 + m sin(2 pi 2 s f t)) sin(2 pi f t) + noise, stage by stage.
SignalSeries gen_motor_current(const MotorScenario& scenario, double dt, std::uint64_t seed);

/// Balanced three-phase set sharing the modulation envelope of gen_motor_current.
/// Phase a is identical to gen_motor_current for the same arguments.
struct ThreePhaseCurrents {
  SignalSeries a, b, c;
};
ThreePhaseCurrents gen_three_phase_current(const MotorScenario& scenario, double dt,
                                           std::uint64_t seed);

/// Per-sample slip of the active stage; the load input of the motor scenarios.
SignalSeries gen_slip_profile(const MotorScenario& scenario, double dt);

struct DqFrameParams {
  double omega = 0.0;  // rotor speed, rad/s
  double mutual_inductance = 0.0;
  double tau_r = 1.0;  // rotor time constant, s
  double psi_r = 1.0;  // rotor flux, Wb
  double i_qs = 0.0;
};

/// Speed of the rotor-flux-oriented frame: omega + (M / tau_r) (i_qs / psi_r).
double rotating_frame_speed(const DqFrameParams& p);

struct DqCurrent {
  double d = 0.0;
  double q = 0.0;
};

/// Amplitude-invariant Park transform.
DqCurrent park_dq(double i_a, double i_b, double i_c, double theta);

/// Machine constants used to drive the dq frame of the synthetic scenarios.
struct MachineConstants {
  double mutual_inductance = 0.1;
  double tau_r = 0.2;
  double psi_r = 1.0;
};

/// dq current magnitude of a three-phase set, with the frame angle integrated
/// from rotating_frame_speed. Rotor speed and i_qs are set per stage so that the
/// frame turns at the supply frequency.
SignalSeries dq_magnitude(const ThreePhaseCurrents& currents, const MotorScenario& scenario,
                          const MachineConstants& machine = {});

}  // namespace sentinel

#endif  // SENTINEL_SIGNALS_HPP
