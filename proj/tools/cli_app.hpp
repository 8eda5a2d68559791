#pragma once

#include <string>
#include <vector>

namespace loadsift::cli {

/// Parses arguments, dispatches to the command layer, and maps failures to
/// exit codes: 0 success, 1 usage error, 2 data/model error.
int run(const std::vector<std::string>& args);

} // namespace loadsift::cli
