// Command-line front end; tools/idealdens.cpp is a thin wrapper around run_cli.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idealdens {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_numeric = 2,
    exit_verdict_failed = 3,
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idealdens
