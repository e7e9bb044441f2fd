#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsekit::cli {

// Exit codes.
enum Exit : int {
  kHolds = 0,
  kFails = 1,
  kUnknown = 2,
  kMalformedJson = 3,
  kSchemaError = 4,
  kUsage = 5,
  kCapExceeded = 6,
  kInconsistent = 7,
};

// Runs one invocation (arguments without the program name). The JSON report
// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsekit::cli
