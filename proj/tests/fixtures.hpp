#ifndef SENTINEL_TESTS_FIXTURES_HPP
#define SENTINEL_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "sentinel/encoding.hpp"
#include "sentinel/signals.hpp"

namespace fixture {

/// First-order integer system y += round((u - y) / 2) driven by a square wave
/// between 0 and 7. Every (previous output, input) pair determines the next
/// output, and each plateau settles long before the input flips.
struct DeterministicSource {
  sentinel::SignalSeries u, y;
  sentinel::EncodingConfig cfg{3, 1, 0.0, 7.0, false};
};

inline DeterministicSource deterministic_source(std::size_t periods = 8, std::size_t plateau = 20) {
  DeterministicSource s;
  s.u.dt = s.y.dt = 1.0;
  long y = 0;
  for (std::size_t p = 0; p < periods; ++p)
    for (long level : {0L, 7L})
      for (std::size_t k = 0; k < plateau; ++k) {
        y += std::lround(static_cast<double>(level - y) / 2.0);
        s.u.samples.push_back(static_cast<double>(level));
        s.y.samples.push_back(static_cast<double>(y));
      }
  return s;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sentinel_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixture

#endif  // SENTINEL_TESTS_FIXTURES_HPP
