#pragma once

#include <ostream>
#include <span>
#include <string>

namespace negacopula::cli {

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,        ///< an audit or test did not pass
    kUsageError = 2,         ///< bad arguments or unreadable data
    kModelInapplicable = 3,  ///< positive dependence in the data
};

/// Runs one command line (args excludes the program name). Results go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace negacopula::cli
