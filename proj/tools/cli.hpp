#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rosc::cli {

/// Parses args (without the program name) and runs the selected subcommand,
/// writing reports to `out` and diagnostics to `err`.
/// Returns 0 when every check passed, 1 when a check failed or a run aborted,
/// 2 on invalid configuration.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace rosc::cli
