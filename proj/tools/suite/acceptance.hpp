#pragma once

#include "rigidity/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rigidity::suite {

struct Options {
    double tol = kRankTol;
    std::uint64_t seed = 0x5eed2024;
};

struct CheckResult {
    int id = 0;
    std::string name;
    std::string claim;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CheckResult> run_acceptance(const Options& options = {});

// One line per check. Timings are left out so the output is reproducible.
std::string format_line(const CheckResult& r);

}  // namespace rigidity::suite
