#pragma once

#include "config.hpp"

#include <iosfwd>

namespace aperiodica::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kInternalError = 2 };

// Runs one command; artifacts go to cfg.output / cfg.json_output or to out.
// Errors are reported on err as a JSON object and mapped to an exit code.
int run(RunConfig cfg, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace aperiodica::cli
