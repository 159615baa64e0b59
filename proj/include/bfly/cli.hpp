#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bfly::cli {

// Runs one CLI invocation (argv without the program name). Returns the
// process exit code: 0 success, 1 theorem check failed, 2 usage error.
// Report output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bfly::cli
