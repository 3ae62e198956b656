#ifndef LIESYLOW_CLI_HPP
#define LIESYLOW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace liesylow {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitComputation = 3,
};

/// Environment variable consulted for the default worker count.
inline constexpr const char* kJobsEnvVar = "LIESYLOW_JOBS";

/// Entry point of the `liesylow` tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liesylow

#endif  // LIESYLOW_CLI_HPP
