#include "sentinel/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sentinel {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round_sig9(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace sentinel
