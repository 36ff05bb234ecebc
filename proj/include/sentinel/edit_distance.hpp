#ifndef SENTINEL_EDIT_DISTANCE_HPP
#define SENTINEL_EDIT_DISTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace sentinel {

using Symbol = std::int32_t;

/// Emitted where no production applies. Equal to nothing, itself included.
inline constexpr Symbol kUnknownSymbol = -1;

struct EditCosts {
  double substitute = 1.0;
  double insert = 1.0;
  double remove = 1.0;

  void validate() const {
    for (double c : {substitute, insert, remove})
      if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("edit costs must be >= 0");
  }
};

struct SymbolEqual {
  bool operator()(Symbol a, Symbol b) const { return a == b && a != kUnknownSymbol; }
};

/// Minimum total cost of substitutions, insertions and deletions turning
/// `from` into `to`. Two-row dynamic programme, O(|from| |to|).
template <typename T, typename Equal = std::equal_to<>>
double edit_distance(std::span<const T> from, std::span<const T> to, const EditCosts& costs = {},
                     Equal equal = {}) {
  costs.validate();
  std::vector<double> prev(to.size() + 1), cur(to.size() + 1);
  for (std::size_t j = 0; j <= to.size(); ++j) prev[j] = static_cast<double>(j) * costs.insert;
  for (std::size_t i = 1; i <= from.size(); ++i) {
    cur[0] = static_cast<double>(i) * costs.remove;
    for (std::size_t j = 1; j <= to.size(); ++j) {
      const double keep = prev[j - 1] + (equal(from[i - 1], to[j - 1]) ? 0.0 : costs.substitute);
      cur[j] = std::min({keep, prev[j] + costs.remove, cur[j - 1] + costs.insert});
    }
    std::swap(prev, cur);
  }
  return prev[to.size()];
}

inline double edit_distance(std::span<const Symbol> from, std::span<const Symbol> to,
                            const EditCosts& costs = {}) {
  return edit_distance<Symbol, SymbolEqual>(from, to, costs);
}

inline double edit_distance(std::string_view from, std::string_view to,
                            const EditCosts& costs = {}) {
  return edit_distance<char>(std::span<const char>(from.data(), from.size()),
                             std::span<const char>(to.data(), to.size()), costs);
}

}  // namespace sentinel

#endif  // SENTINEL_EDIT_DISTANCE_HPP
