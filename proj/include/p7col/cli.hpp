#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p7col {

/// Exit codes of the command-line tool.
enum ExitCode : int { kDecided = 0, kError = 1, kInvalidInput = 2 };

/// Runs one subcommand; `args` excludes the program name.
/// `input` serves FILE arguments given as "-".
int dispatch(const std::vector<std::string>& args, std::istream& input, std::ostream& out, std::ostream& err);

} // namespace p7col
