#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace movelet::cli {

/// Environment variable that overrides `dataset_root` from the config file.
inline constexpr const char* kDatasetRootEnv = "MOVELET_DATASET_ROOT";

/// Entry point shared by the `movelet` executable and the tests. `args`
/// excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace movelet::cli
