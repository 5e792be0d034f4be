#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace genexp::cli {

// Full command-line entry point (arguments without the program name).
// Returns 0 on success, 1 on configuration/validation failures (including
// usage errors), 2 on runtime failures.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace genexp::cli
