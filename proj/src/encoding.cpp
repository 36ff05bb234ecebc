#include "sentinel/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sentinel/format.hpp"

namespace sentinel {

void EncodingConfig::validate() const {
  if (bits < 1 || bits > 16) throw std::invalid_argument("bits must lie in [1, 16]");
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  if (!std::isfinite(v_min) || !std::isfinite(v_max) || !(v_min < v_max))
    throw std::invalid_argument("encoding range requires finite v_min < v_max");
}

EncodingConfig fit_encoding(const SignalSeries& series, int bits, int window, bool take_abs,
                            double margin) {
  series.validate();
  if (!std::isfinite(margin) || margin < 0.0)
    throw std::invalid_argument("headroom margin must be non-negative");

  double lo = take_abs ? std::abs(series.samples.front()) : series.samples.front();
  double hi = lo;
  for (double x : series.samples) {
    const double v = take_abs ? std::abs(x) : x;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double range = hi - lo;
  // A constant series still needs a non-empty scale.
  if (range <= 0.0) range = std::max(std::abs(hi), 1.0);
  const double pad = margin > 0.0 ? margin * range : 0.0;

  EncodingConfig cfg{bits, window, round_sig9(lo - pad), round_sig9(hi + pad), take_abs};
  if (!(cfg.v_min < cfg.v_max)) cfg.v_max = round_sig9(cfg.v_min + range);
  cfg.validate();
  return cfg;
}

double normalize(double x, const EncodingConfig& cfg, ClampCounter* clamps) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot normalize a non-finite value");
  if (cfg.take_abs) x = std::abs(x);
  const double u = (x - cfg.v_min) / (cfg.v_max - cfg.v_min);
  if (u < 0.0) {
    if (clamps) ++clamps->below;
    return 0.0;
  }
  if (u > 1.0) {
    if (clamps) ++clamps->above;
    return 1.0;
  }
  return u;
}

Level quantize(double u, int bits) {
  if (bits < 1 || bits > 16) throw std::invalid_argument("bits must lie in [1, 16]");
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("quantize expects u in [0, 1]");
  const double top = static_cast<double>((1u << bits) - 1u);
  return static_cast<Level>(std::lround(u * top));
}

double decode(Level level, int bits) {
  if (bits < 1 || bits > 16) throw std::invalid_argument("bits must lie in [1, 16]");
  const unsigned top = (1u << bits) - 1u;
  if (level > top) throw std::invalid_argument("level out of range for bit depth");
  return static_cast<double>(level) / static_cast<double>(top);
}

std::vector<Level> codify(const SignalSeries& series, const EncodingConfig& cfg,
                          ClampCounter* clamps) {
  cfg.validate();
  std::vector<Level> out;
  out.reserve(series.size());
  for (double x : series.samples) out.push_back(quantize(normalize(x, cfg, clamps), cfg.bits));
  return out;
}

Pattern::Pattern(LevelVector levels, int bits) : levels_(std::move(levels)), bits_(bits) {
  if (bits < 1 || bits > 16) throw std::invalid_argument("bits must lie in [1, 16]");
  if (levels_.size() < 1) throw std::invalid_argument("pattern must hold at least one level");
  const unsigned top = (1u << bits) - 1u;
  if ((levels_.array() > static_cast<Level>(top)).any())
    throw std::invalid_argument("pattern level out of range for bit depth");
}

Eigen::VectorXd Pattern::decoded() const {
  const double top = static_cast<double>((1u << bits_) - 1u);
  return levels_.cast<double>() / top;
}

std::vector<Pattern> make_windows(const SignalSeries& series, const EncodingConfig& cfg,
                                  ClampCounter* clamps) {
  cfg.validate();
  const auto w = static_cast<std::size_t>(cfg.window);
  if (series.size() < w) throw std::invalid_argument("series is shorter than the window");

  const std::vector<Level> levels = codify(series, cfg, clamps);
  std::vector<Pattern> windows;
  windows.reserve(levels.size() - w + 1);
  for (std::size_t k = 0; k + w <= levels.size(); ++k) {
    windows.emplace_back(
        Eigen::Map<const LevelVector>(levels.data() + k, static_cast<Eigen::Index>(w)), cfg.bits);
  }
  return windows;
}

}  // namespace sentinel
