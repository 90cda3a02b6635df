#pragma once

#include <string>
#include <vector>

namespace genlab {
namespace cli {

// Full command-line front end; returns the process exit status.
// 0 = success, 2 = usage error, 3 = invariant violation during a run.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace cli
}  // namespace genlab
