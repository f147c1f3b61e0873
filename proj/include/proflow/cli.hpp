/* Command-line driver entry point (argv-level, testable in-process). */
#pragma once

namespace proflow {

// Returns the process exit code: 0 success, 1 verification failure,
// 2 usage/domain error.
int run_cli(int argc, const char* const* argv);

}  // namespace proflow
