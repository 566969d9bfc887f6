#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfs {

/// Runs one command line (without the program name). Output goes to `out`
/// (or the --out file), diagnostics to `err`. Returns the exit code:
/// 0 when every gate passes, 1 on a gate failure, 2 on a usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfs
