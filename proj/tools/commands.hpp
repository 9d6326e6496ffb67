#pragma once

#include "config.hpp"

namespace diejen::cli {

enum ExitCode { exit_pass = 0, exit_check_failure = 1, exit_config = 2 };

// Validates couplings for the command, runs it and writes the report to cfg.out (or stdout).
// A one-line summary per check family goes to stderr.
int run_command(const RunConfig& cfg);

}  // namespace diejen::cli
