#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imcflab::cli {

/// Runs one subcommand. `args` excludes the program name. Returns the exit status.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imcflab::cli
