#include "suite/acceptance.hpp"

#include <iostream>

int main() {
    const auto results = rigidity::suite::run_acceptance({});
    int failed = 0;
    for (const auto& r : results) {
        std::cout << rigidity::suite::format_line(r) << '\n';
        if (!r.passed) ++failed;
    }
    std::cout << results.size() - failed << "/" << results.size() << " acceptance checks passed\n";
    return failed == 0 ? 0 : 1;
}
