#ifndef SENTINEL_CLI_HPP
#define SENTINEL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sentinel {

inline constexpr int kExitNormal = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFault = 2;

/// Runs one `sentinel` invocation. `args` excludes the program name.
/// Returns 0 when the monitored series is normal, 2 when a fault was detected
/// and 1 on usage, I/O or configuration errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sentinel

#endif  // SENTINEL_CLI_HPP
