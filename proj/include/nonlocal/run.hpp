#pragma once

#include <ostream>

#include "nonlocal/config.hpp"

namespace nonlocal {

/// Exit status of a run.
enum ExitStatus : int { kExitOk = 0, kExitError = 1, kExitInvariant = 2 };

/// Runs `config`, writing the CSV to config.output (or `fallback` when no
/// output path is set) and the optional JSON summary. Errors are reported on
/// `log`; the return value is the process exit status.
int run(const RunConfig& config, std::ostream& fallback, std::ostream& log);

}  // namespace nonlocal
