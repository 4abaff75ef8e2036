#pragma once

#include <ostream>

namespace critlab::cli {

/// Runs one command line. Returns 0 on success, 2 when the requested
/// parameters are infeasible or contradictory, 1 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace critlab::cli
