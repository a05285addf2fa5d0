#pragma once

#include <ostream>

namespace sigforge::cli {

// Runs the command line tool. Exit status: 0 success, 1 diagnostics
// reported, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigforge::cli
