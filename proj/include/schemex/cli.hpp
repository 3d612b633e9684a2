#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schemex::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kYes = 0,
  kParseError = 1,
  kInvalidScheme = 2,
  kNo = 3,
  kPrecondition = 4,
  kDisagreement = 5,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schemex::cli
