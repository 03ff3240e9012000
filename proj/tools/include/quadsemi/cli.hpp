#ifndef QUADSEMI_CLI_HPP
#define QUADSEMI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace quadsemi::cli {

inline constexpr const char* kReportSchema = "quadsemi.report/1";

enum ExitCode : int {
  kSuccess = 0,     // success, Match, Certified
  kRefuted = 1,     // mismatch, refutation, or theorem violation
  kUsageError = 2,  // bad arguments or violated preconditions
};

/// Runs one command line (without the program name) and returns the exit code.
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadsemi::cli

#endif  // QUADSEMI_CLI_HPP
