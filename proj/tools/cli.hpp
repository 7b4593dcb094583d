#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contset::cli {

struct CommandInfo {
  std::string name;
  /// Library operation the command dispatches to.
  std::string operation;
  std::string summary;
};

const std::vector<CommandInfo>& commands();

/// Runs one command line (without the program name). Exit codes: 0 for
/// success or a true answer, 1 for a false answer, 2 for usage, parse and
/// precondition errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contset::cli
