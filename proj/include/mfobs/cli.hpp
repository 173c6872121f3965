#pragma once

#include <iosfwd>

namespace mfobs {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,  // usage or validation error
    kExitBlowUp = 3,  // non-finite state during simulation
};

/// Entry point of the `mfobs` tool with injectable streams.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfobs
