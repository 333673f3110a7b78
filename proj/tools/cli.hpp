#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iso::cli {

/// Runs the `iso` command line with `args` (program name excluded).
/// Exit codes: 0 ok / isochronous, 1 not isochronous, 2 invalid input or solver failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iso::cli
