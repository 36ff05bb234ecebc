#ifndef SENTINEL_FORMAT_HPP
#define SENTINEL_FORMAT_HPP

#include <string>

namespace sentinel {

/// Shortest "%.9g" rendering used for every number written to disk.
std::string format_number(double v);

/// v rounded to 9 significant digits.
double round_sig9(double v);

}  // namespace sentinel

#endif  // SENTINEL_FORMAT_HPP
