#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcpnet {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // not dominated, conditionally cyclic, infeasible
  kExitUnknown = 2,   // undecided or a budget ran out
  kExitUsage = 64,
  kExitData = 65,     // unreadable, malformed or invalid input document
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tcpnet
