// The modalsat command line.

#ifndef MODALSAT_CLI_HPP
#define MODALSAT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace modalsat::cli {

enum ExitCode : int { kSat = 0, kSuccess = 0, kUnsat = 1, kUsage = 2, kBoundExceeded = 3 };

/// Runs one invocation. `args` excludes the program name. Errors are
/// reported as a single line on `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Formula text from a stream: lines starting with '#' are skipped, the
/// rest are joined with spaces.
std::string read_formula_text(std::istream& in);

}  // namespace modalsat::cli

#endif  // MODALSAT_CLI_HPP
