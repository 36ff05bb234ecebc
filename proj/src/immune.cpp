#include "sentinel/immune.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace sentinel {

namespace {

using LevelMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using WideVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Distances are taken on integer level differences and scaled once, so the
// censoring and monitoring passes see bit-identical values for equal patterns.
double scaled_distance(std::int64_t squared_levels, int bits) {
  return std::sqrt(static_cast<double>(squared_levels)) /
         static_cast<double>((1u << bits) - 1u);
}

// Column-wise squared level distances between `columns` and `probe`.
Eigen::Matrix<std::int64_t, 1, Eigen::Dynamic> squared_distances(const LevelMatrix& columns,
                                                                   const WideVector& probe) {
  return (columns.colwise() - probe).colwise().squaredNorm();
}

LevelMatrix to_matrix(const std::vector<Pattern>& patterns, int window) {
  LevelMatrix m(window, static_cast<Eigen::Index>(patterns.size()));
  for (std::size_t j = 0; j < patterns.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) = patterns[j].levels().cast<std::int64_t>();
  return m;
}

bool all_outside(const LevelMatrix& columns, Eigen::Index count, const WideVector& probe,
                 double threshold, int bits) {
  if (count == 0) return true;
  const auto d2 = squared_distances(columns.leftCols(count), probe);
  return classify_distance(scaled_distance(d2.minCoeff(), bits), threshold) ==
         Proximity::outside;
}

}  // namespace

void ImmuneParams::validate() const {
  if (detectors < 1) throw std::invalid_argument("detector count must be at least 1");
  if (!(md > 0.0 && md < 1.0)) throw std::invalid_argument("md must lie in (0, 1)");
}

Proximity classify_distance(double distance, double threshold) {
  if (distance < threshold - kThresholdBand) return Proximity::inside;
  if (distance > threshold + kThresholdBand) return Proximity::outside;
  return Proximity::boundary;
}

double match_threshold(double md, int window) {
  return md * std::sqrt(static_cast<double>(window));
}

double euclidean_distance(const Pattern& p, const Pattern& q) {
  if (!p.compatible(q))
    throw std::invalid_argument("patterns differ in window length or bit depth");
  const WideVector diff = p.levels().cast<std::int64_t>() - q.levels().cast<std::int64_t>();
  return scaled_distance(diff.squaredNorm(), p.bits());
}

bool matches(const Pattern& p, const Pattern& q, double md) {
  return classify_distance(euclidean_distance(p, q), match_threshold(md, p.window())) ==
         Proximity::inside;
}

bool r_contiguous_match(std::string_view p, std::string_view q, std::size_t r) {
  if (p.size() != q.size()) throw std::invalid_argument("bit strings differ in length");
  if (r < 1 || r > p.size()) throw std::invalid_argument("r must lie in [1, length]");
  std::size_t run = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    run = p[i] == q[i] ? run + 1 : 0;
    if (run >= r) return true;
  }
  return false;
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> DetectorSet::level_matrix() const {
  LevelMatrix m(cfg.window, static_cast<Eigen::Index>(detectors.size()));
  for (std::size_t j = 0; j < detectors.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) = detectors[j].pattern.levels().cast<std::int64_t>();
  return m;
}

void DetectorSet::validate() const {
  cfg.validate();
  params.validate();
  if (detectors.empty()) throw std::invalid_argument("detector set is empty");
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    const auto& p = detectors[i].pattern;
    if (detectors[i].id != i) throw std::invalid_argument("detector ids must be 0..d-1");
    if (p.window() != cfg.window || p.bits() != cfg.bits)
      throw std::invalid_argument("detector shape does not match the encoding");
  }
  const double th = threshold();
  for (std::size_t i = 0; i < detectors.size(); ++i)
    for (std::size_t j = i + 1; j < detectors.size(); ++j)
      if (classify_distance(euclidean_distance(detectors[i].pattern, detectors[j].pattern), th) !=
          Proximity::outside)
        throw std::invalid_argument("detectors " + std::to_string(i) + " and " +
                                    std::to_string(j) + " violate the spacing rule");
}

DetectorExhaustion::DetectorExhaustion(std::size_t placed, std::size_t requested,
                                       std::size_t attempts)
    : std::runtime_error("detector generation exhausted " + std::to_string(attempts) +
                         " attempts after placing " + std::to_string(placed) + " of " +
                         std::to_string(requested) +
                         " detectors; the self set and spacing cover the domain too densely"),
      placed_(placed) {}

DetectorSet generate_detectors(const std::vector<Pattern>& self_set, const ImmuneParams& params,
                               const EncodingConfig& cfg) {
  params.validate();
  cfg.validate();
  if (self_set.empty()) throw std::invalid_argument("self set is empty");
  for (const auto& p : self_set)
    if (p.window() != cfg.window || p.bits() != cfg.bits)
      throw std::invalid_argument("self pattern does not match the encoding");

  // Duplicate self patterns censor identically.
  std::set<std::vector<Level>> seen;
  std::vector<Pattern> distinct;
  for (const auto& p : self_set) {
    std::vector<Level> key(p.levels().data(), p.levels().data() + p.window());
    if (seen.insert(std::move(key)).second) distinct.push_back(p);
  }
  const LevelMatrix self = to_matrix(distinct, cfg.window);
  const double th = match_threshold(params.md, cfg.window);

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> level(0, cfg.max_level());

  LevelMatrix accepted(cfg.window, static_cast<Eigen::Index>(params.detectors));
  Eigen::Index placed = 0;
  WideVector candidate(cfg.window);
  const std::size_t budget = params.attempt_budget();
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    for (Eigen::Index k = 0; k < candidate.size(); ++k) candidate[k] = level(rng);
    if (!all_outside(self, self.cols(), candidate, th, cfg.bits)) continue;
    if (!all_outside(accepted, placed, candidate, th, cfg.bits)) continue;
    accepted.col(placed++) = candidate;
    if (static_cast<std::size_t>(placed) == params.detectors) break;
  }
  if (static_cast<std::size_t>(placed) < params.detectors)
    throw DetectorExhaustion(static_cast<std::size_t>(placed), params.detectors, budget);

  DetectorSet ds;
  ds.params = params;
  ds.cfg = cfg;
  ds.self_size = self_set.size();
  ds.detectors.reserve(params.detectors);
  for (Eigen::Index j = 0; j < placed; ++j)
    ds.detectors.push_back(
        {static_cast<std::size_t>(j), Pattern(accepted.col(j).cast<Level>(), cfg.bits)});
  return ds;
}

ImmuneMonitorResult monitor(const SignalSeries& series, const DetectorSet& ds) {
  ImmuneMonitorResult result;
  const std::vector<Pattern> windows = make_windows(series, ds.cfg, &result.clamps);
  result.windows = windows.size();
  result.histogram.assign(ds.detectors.size(), 0);

  const LevelMatrix detectors = ds.level_matrix();
  const double th = ds.threshold();
  for (std::size_t k = 0; k < windows.size(); ++k) {
    const WideVector probe = windows[k].levels().cast<std::int64_t>();
    const auto d2 = squared_distances(detectors, probe);
    for (Eigen::Index j = 0; j < d2.size(); ++j) {
      const double d = scaled_distance(d2[j], ds.cfg.bits);
      if (classify_distance(d, th) == Proximity::inside) {
        result.events.push_back({k, static_cast<std::size_t>(j), d});
        ++result.histogram[static_cast<std::size_t>(j)];
      }
    }
  }
  return result;
}

}  // namespace sentinel
