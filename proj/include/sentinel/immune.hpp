#ifndef SENTINEL_IMMUNE_HPP
#define SENTINEL_IMMUNE_HPP

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sentinel/encoding.hpp"
#include "sentinel/signals.hpp"

namespace sentinel {

/// Negative-selection parameters. A match is a Euclidean distance below
/// md * sqrt(w), i.e. a fraction of the unit-hypercube diagonal.
struct ImmuneParams {
  std::size_t detectors = 30;
  double md = 0.2;
  std::size_t max_attempts = 0;  // 0 selects 10000 * detectors
  std::uint64_t seed = 1;

  void validate() const;
  std::size_t attempt_budget() const { return max_attempts ? max_attempts : 10000 * detectors; }
};

/// Distances within this band of the threshold count as equal to it: they
/// neither match nor admit a candidate.
inline constexpr double kThresholdBand = 1e-12;

enum class Proximity { inside, boundary, outside };

Proximity classify_distance(double distance, double threshold);

double match_threshold(double md, int window);

double euclidean_distance(const Pattern& p, const Pattern& q);

bool matches(const Pattern& p, const Pattern& q, double md);

/// Legacy rule: true iff p and q agree on at least r contiguous positions.
bool r_contiguous_match(std::string_view p, std::string_view q, std::size_t r);

struct Detector {
  std::size_t id = 0;
  Pattern pattern;
};

struct DetectorSet {
  std::vector<Detector> detectors;
  ImmuneParams params;
  EncodingConfig cfg;
  std::size_t self_size = 0;

  double threshold() const { return match_threshold(params.md, cfg.window); }
  /// Detector levels as columns (w x d).
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> level_matrix() const;
  /// Throws std::invalid_argument if ids, shapes or spacing are inconsistent.
  void validate() const;
};

class DetectorExhaustion : public std::runtime_error {
 public:
  DetectorExhaustion(std::size_t placed, std::size_t requested, std::size_t attempts);
  std::size_t placed() const { return placed_; }

 private:
  std::size_t placed_;
};

/// Censors uniformly drawn candidates against the self set and against the
/// detectors already accepted. Throws DetectorExhaustion when the attempt
/// budget runs out.
DetectorSet generate_detectors(const std::vector<Pattern>& self_set, const ImmuneParams& params,
                               const EncodingConfig& cfg);

struct ActivationEvent {
  std::size_t window_index = 0;
  std::size_t detector_id = 0;
  double distance = 0.0;

  friend bool operator==(const ActivationEvent&, const ActivationEvent&) = default;
};

struct ImmuneMonitorResult {
  std::vector<ActivationEvent> events;
  std::vector<std::size_t> histogram;  // indexed by detector id
  std::size_t windows = 0;
  ClampCounter clamps;

  bool abnormal() const { return !events.empty(); }
};

/// Every window (stride 1) against every detector; all matches are recorded.
ImmuneMonitorResult monitor(const SignalSeries& series, const DetectorSet& ds);

}  // namespace sentinel

#endif  // SENTINEL_IMMUNE_HPP
