#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rigidity::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_parse = 2,
    exit_pipeline = 3,
    exit_domain = 4,
};

struct Environment {
    std::optional<std::string> tol;  // RIGIDITY_TOL
};

// Full command-line entry point; never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

}  // namespace rigidity::cli
