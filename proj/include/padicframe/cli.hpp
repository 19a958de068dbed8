#pragma once

#include <ostream>

namespace padicframe {

/// Runs the command line: JSON reports on `out`, diagnostics on `err`.
/// Returns 0 on success, 1 for configuration errors, 2 for domain errors and
/// 3 when a theorem check reports a violation.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace padicframe
