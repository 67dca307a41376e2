#ifndef MODLIE_CLI_HPP
#define MODLIE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace modlie::cli {

// Exit codes of the `el` tool.
enum ExitCode : int {
  kOk = 0,
  kNonzeroResidual = 1,
  kUsage = 2,
  kBuildFailure = 3,
  kNotIsotropic = 4,
};

// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace modlie::cli

#endif  // MODLIE_CLI_HPP
