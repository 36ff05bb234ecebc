#ifndef SENTINEL_ENCODING_HPP
#define SENTINEL_ENCODING_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sentinel/signals.hpp"

namespace sentinel {

using Level = std::uint16_t;
using LevelVector = Eigen::Matrix<Level, Eigen::Dynamic, 1>;

/// Scale and shape of the quantized representation shared by both engines.
struct EncodingConfig {
  int bits = 8;
  int window = 1;
  double v_min = 0.0;
  double v_max = 1.0;
  bool take_abs = false;

  void validate() const;
  Level max_level() const { return static_cast<Level>((1u << bits) - 1u); }

  friend bool operator==(const EncodingConfig&, const EncodingConfig&) = default;
};

/// Fits v_min/v_max to the data range widened by `margin` of the range on both
/// sides. The bounds are rounded to 9 significant digits so that a persisted
/// config reproduces the in-memory one exactly.
EncodingConfig fit_encoding(const SignalSeries& series, int bits, int window, bool take_abs,
                            double margin = 0.05);

/// Counts values that fell outside [v_min, v_max] and were clamped.
struct ClampCounter {
  std::size_t below = 0;
  std::size_t above = 0;
  std::size_t total() const { return below + above; }
};

double normalize(double x, const EncodingConfig& cfg, ClampCounter* clamps = nullptr);

/// Nearest level of u * (2^bits - 1), ties away from zero.
Level quantize(double u, int bits);

double decode(Level level, int bits);

/// Normalizes and quantizes every sample.
std::vector<Level> codify(const SignalSeries& series, const EncodingConfig& cfg,
                          ClampCounter* clamps = nullptr);

/// A window of quantization levels.
class Pattern {
 public:
  Pattern() = default;
  Pattern(LevelVector levels, int bits);

  const LevelVector& levels() const { return levels_; }
  int bits() const { return bits_; }
  int window() const { return static_cast<int>(levels_.size()); }
  Level operator[](Eigen::Index i) const { return levels_[i]; }

  /// Levels mapped back onto [0, 1].
  Eigen::VectorXd decoded() const;

  bool compatible(const Pattern& other) const {
    return bits_ == other.bits_ && levels_.size() == other.levels_.size();
  }

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.bits_ == b.bits_ && a.levels_.size() == b.levels_.size() && a.levels_ == b.levels_;
  }

 private:
  LevelVector levels_;
  int bits_ = 1;
};

/// Stride-1 sliding windows over the codified series.
std::vector<Pattern> make_windows(const SignalSeries& series, const EncodingConfig& cfg,
                                  ClampCounter* clamps = nullptr);

}  // namespace sentinel

#endif  // SENTINEL_ENCODING_HPP
