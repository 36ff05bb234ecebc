#include "sentinel/signals.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sentinel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_positive_finite(double v, const char* what) {
  require(std::isfinite(v) && v > 0.0, what);
}

// splitmix64 step; gives each phase its own noise stream derived from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SignalSeries motor_phase(const MotorScenario& scenario, double dt, std::uint64_t noise_seed,
                         double phase_offset, const char* label) {
  scenario.validate();
  require_positive_finite(dt, "dt must be positive and finite");

  const double f = scenario.supply_frequency_hz;
  const double m = scenario.effective_modulation();
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  SignalSeries out;
  out.dt = dt;
  out.label = label;
  std::size_t k = 0;
  for (const LoadStage& stage : scenario.load_stages) {
    const auto n = static_cast<std::size_t>(std::llround(stage.duration_s / dt));
    for (std::size_t i = 0; i < n; ++i, ++k) {
      const double t = static_cast<double>(k) * dt;
      const double envelope =
          stage.amplitude * (1.0 + m * std::sin(kTwoPi * 2.0 * stage.slip * f * t));
      double v = envelope * std::sin(kTwoPi * f * t + phase_offset);
      if (scenario.noise_std > 0.0) v += scenario.noise_std * noise(rng);
      out.samples.push_back(v);
    }
  }
  return out;
}

}  // namespace

void SignalSeries::validate() const {
  require_positive_finite(dt, "series dt must be positive and finite");
  require(!samples.empty(), "series must contain at least one sample");
  for (double v : samples) require(std::isfinite(v), "series samples must be finite");
}

SignalSeries concat(const std::vector<SignalSeries>& parts, std::string label) {
  require(!parts.empty(), "concat needs at least one series");
  SignalSeries out;
  out.dt = parts.front().dt;
  out.label = std::move(label);
  for (const auto& p : parts) {
    require(std::abs(p.dt - out.dt) <= 1e-12 * out.dt, "concat requires a common sample period");
    out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
  }
  return out;
}

SignalKind parse_signal_kind(const std::string& name) {
  if (name == "sine") return SignalKind::sine;
  if (name == "freq_shifted" || name == "freq-shifted") return SignalKind::freq_shifted;
  if (name == "composite") return SignalKind::composite;
  throw std::invalid_argument("unknown signal kind: " + name);
}

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::sine: return "sine";
    case SignalKind::freq_shifted: return "freq_shifted";
    case SignalKind::composite: return "composite";
  }
  return "unknown";
}

SignalSeries gen_signal(SignalKind kind, double amplitude, double base_freq_hz, double dt,
                        std::size_t n) {
  require_positive_finite(dt, "dt must be positive and finite");
  require_positive_finite(base_freq_hz, "base frequency must be positive and finite");
  require(std::isfinite(amplitude), "amplitude must be finite");
  require(n >= 1, "signal needs at least one sample");

  SignalSeries out;
  out.dt = dt;
  out.label = to_string(kind);
  out.samples.resize(n);
  const double w = kTwoPi * base_freq_hz;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    switch (kind) {
      case SignalKind::sine: out.samples[k] = amplitude * std::sin(w * t); break;
      case SignalKind::freq_shifted: out.samples[k] = amplitude * std::sin(1.1 * w * t); break;
      case SignalKind::composite:
        out.samples[k] = 0.5 * amplitude * std::sin(w * t) + 0.5 * amplitude * std::sin(2.0 * w * t);
        break;
    }
  }
  return out;
}

void MotorScenario::validate() const {
  require_positive_finite(supply_frequency_hz, "supply frequency must be positive and finite");
  require(!load_stages.empty(), "motor scenario needs at least one load stage");
  for (const auto& s : load_stages) {
    require_positive_finite(s.duration_s, "stage duration must be positive");
    require_positive_finite(s.amplitude, "stage amplitude must be positive");
    require(s.slip >= 0.0 && s.slip <= 0.2, "stage slip must lie in [0, 0.2]");
  }
  if (broken_bar) {
    require(modulation_depth >= 0.0 && modulation_depth < 1.0,
            "modulation depth must lie in [0, 1)");
  }
  require(std::isfinite(noise_std) && noise_std >= 0.0, "noise std must be non-negative");
}

std::vector<std::size_t> MotorScenario::stage_lengths(double dt) const {
  std::vector<std::size_t> lengths;
  lengths.reserve(load_stages.size());
  for (const auto& s : load_stages)
    lengths.push_back(static_cast<std::size_t>(std::llround(s.duration_s / dt)));
  return lengths;
}

SignalSeries gen_motor_current(const MotorScenario& scenario, double dt, std::uint64_t seed) {
  return motor_phase(scenario, dt, seed, 0.0, "motor_current");
}

ThreePhaseCurrents gen_three_phase_current(const MotorScenario& scenario, double dt,
                                           std::uint64_t seed) {
  constexpr double kThird = kTwoPi / 3.0;
  return {motor_phase(scenario, dt, seed, 0.0, "i_a"),
          motor_phase(scenario, dt, derive_seed(seed, 1), -kThird, "i_b"),
          motor_phase(scenario, dt, derive_seed(seed, 2), kThird, "i_c")};
}

SignalSeries gen_slip_profile(const MotorScenario& scenario, double dt) {
  scenario.validate();
  require_positive_finite(dt, "dt must be positive and finite");
  SignalSeries out;
  out.dt = dt;
  out.label = "slip";
  const auto lengths = scenario.stage_lengths(dt);
  for (std::size_t i = 0; i < lengths.size(); ++i)
    out.samples.insert(out.samples.end(), lengths[i], scenario.load_stages[i].slip);
  return out;
}

double rotating_frame_speed(const DqFrameParams& p) {
  require(std::isfinite(p.tau_r) && p.tau_r > 0.0, "tau_r must be positive");
  require(std::isfinite(p.psi_r) && p.psi_r != 0.0, "psi_r must be non-zero");
  return p.omega + (p.mutual_inductance / p.tau_r) * (p.i_qs / p.psi_r);
}

DqCurrent park_dq(double i_a, double i_b, double i_c, double theta) {
  constexpr double kThird = kTwoPi / 3.0;
  constexpr double kScale = 2.0 / 3.0;
  return {kScale * (i_a * std::cos(theta) + i_b * std::cos(theta - kThird) +
                    i_c * std::cos(theta + kThird)),
          -kScale * (i_a * std::sin(theta) + i_b * std::sin(theta - kThird) +
                     i_c * std::sin(theta + kThird))};
}

SignalSeries dq_magnitude(const ThreePhaseCurrents& currents, const MotorScenario& scenario,
                          const MachineConstants& machine) {
  const std::size_t n = currents.a.size();
  require(currents.b.size() == n && currents.c.size() == n, "phase currents differ in length");
  const double dt = currents.a.dt;
  const double w_sync = kTwoPi * scenario.supply_frequency_hz;
  const auto lengths = scenario.stage_lengths(dt);

  SignalSeries out;
  out.dt = dt;
  out.label = "dq_magnitude";
  out.samples.reserve(n);

  double theta = 0.0;
  std::size_t stage = 0;
  std::size_t left = lengths.empty() ? n : lengths[0];
  for (std::size_t k = 0; k < n; ++k) {
    while (left == 0 && stage + 1 < lengths.size()) left = lengths[++stage];
    const double slip = scenario.load_stages[stage].slip;
    const DqFrameParams frame{
        .omega = (1.0 - slip) * w_sync,
        .mutual_inductance = machine.mutual_inductance,
        .tau_r = machine.tau_r,
        .psi_r = machine.psi_r,
        .i_qs = slip * w_sync * machine.tau_r * machine.psi_r / machine.mutual_inductance,
    };
    const DqCurrent dq = park_dq(currents.a.samples[k], currents.b.samples[k],
                                 currents.c.samples[k], theta);
    out.samples.push_back(std::hypot(dq.d, dq.q));
    theta = std::fmod(theta + rotating_frame_speed(frame) * dt, kTwoPi);
    if (left > 0) --left;
  }
  return out;
}

}  // namespace sentinel
