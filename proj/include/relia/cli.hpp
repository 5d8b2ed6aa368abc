#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relia::cli {

// Runs one command with explicit streams so tests can drive the CLI
// in-process. Returns the process exit code: 0 success, 1 usage error,
// 2 data error, 3 estimation failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace relia::cli
