#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lexlearn {

/// Runs the `lexlearn` command line (arguments without the program name).
/// Returns the process exit code: 0 success, 1 ungrammatical sentence
/// (`process` only), 2 usage, configuration or file error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexlearn
