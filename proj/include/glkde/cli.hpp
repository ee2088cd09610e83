#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glkde {

/// Exit codes of the command-line front end.
enum ExitCode : int
{
  exit_ok = 0,
  exit_usage = 1,
  exit_runtime = 2,
};

/// Runs `glkde <subcommand> ...`; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace glkde
