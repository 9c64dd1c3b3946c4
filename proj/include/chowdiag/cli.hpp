#pragma once

#include <iosfwd>

namespace chowdiag {

// Parses and runs one command-line invocation, writing the JSON (or, with
// --pretty, human-readable) report to out and diagnostics to err.
// Returns the process exit code: 0 success, 1 failed mathematical check,
// 2 invalid input, 3 unsupported instance.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chowdiag
