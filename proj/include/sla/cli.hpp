#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sla {

/// Run the command-line tool. Subcommands: geometry, simulate, sweep, bound,
/// exp1, exp2, exp3. Returns 0 on success, nonzero with a diagnostic on the
/// error stream otherwise.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv adapter used by the binary entry point.
int cli_main(int argc, const char* const* argv);

} // namespace sla
