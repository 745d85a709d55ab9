#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adaptem::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Entry point of the `adaptem` tool. Subcommands: run, fit, occupation, verify-transform.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience overload taking the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace adaptem::cli
