#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ah::cli {

/// Runs one CLI invocation. The JSON report goes to `out`; progress and
/// diagnostics go to `err`. Returns 0 when every check passes, 1 on a
/// check failure, 2 on usage or validation errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ah::cli
