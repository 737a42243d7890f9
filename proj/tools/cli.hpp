#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glsctl {

/// Runs one command line (without the program name). Reports go to `out`
/// unless --output names a file; errors go to `err` as a one-line JSON
/// record. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1e-3", "1e-4,1e-3" or "lo..hi [log|lin] [n]" (log and 5 by default).
std::vector<double> parse_delta_grid(const std::string& text);

}  // namespace glsctl
