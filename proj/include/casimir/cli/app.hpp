#pragma once

#include <iosfwd>

namespace casimir::cli {

/// Full command-line front end. Writes the report to `out` (or to --out,
/// atomically), diagnostics to `err`, and returns the exit status:
/// 0 success, 1 error, 2 convergence warning.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
