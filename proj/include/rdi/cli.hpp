#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rdi::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kIoError = 2 };

/// Runs one command line (`args` excludes the program name). JSON goes to `out`, the human
/// summary and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdi::cli
