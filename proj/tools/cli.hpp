#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brlkit::cli {

/// Dispatches one subcommand. `args` excludes the program name. Writes the
/// report to `out` and diagnostics to `err`. Exit codes: 0 success and all
/// requested checks hold, 1 a checked property fails, 2 usage or input error,
/// 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brlkit::cli
