#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphcode {

/// Runs one command line (args excludes the program name). Exit codes:
/// 0 success, 1 library error, 2 usage error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, char** argv);

}  // namespace sphcode
