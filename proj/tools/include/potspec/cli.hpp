#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace potspec::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kViolated = 1,  ///< a theorem check produced a "violated" verdict
    kUsage = 2,     ///< bad arguments, malformed spec, unsupported p, mesh too coarse
    kIo = 3,        ///< unreadable input or unwritable output
};

/// Runs the command line in-process. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Example ids accepted by `repro`.
std::vector<std::string> repro_ids();

}  // namespace potspec::cli
