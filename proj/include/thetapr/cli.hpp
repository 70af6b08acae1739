#pragma once

#include <iosfwd>

namespace thetapr::cli {

// Full command-line entry point. Report JSON goes to `out`, diagnostics to
// `err`. Returns 0 on success, 2 on invalid/degenerate input, 3 when an
// enumeration budget is exceeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace thetapr::cli
