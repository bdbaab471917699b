#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gfdlog::cli {

enum ExitCode : int {
  kOk = 0,        // success, or a trivial word
  kNegative = 1,  // nontrivial word, or no solution
  kUsage = 2,     // bad arguments, parse errors, domain errors
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gfdlog::cli
