#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubesep {

// Whole command-line driver, callable in-process.  `args` excludes the
// program name.  JSON results go to `out`, diagnostics to `err`.  Returns
// the process exit code: 0 ok, 1 input error, 2 failed invariant or
// verification, 3 construction incomplete, 4 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cubesep
