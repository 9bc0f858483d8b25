#pragma once

#include <ostream>

#include "splitpoint/error.hpp"

namespace splitpoint {

/// Process exit status for each error class; 0 is success, 2 is a usage error.
int exit_code(ErrorCode code);

/// Entry point of the `splitpoint` tool. Reports go to `out`, diagnostics to
/// `err`; nothing is written to `out` unless the command succeeds.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splitpoint
