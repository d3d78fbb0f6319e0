#include "commands.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    rigidity::cli::Environment env;
    if (const char* tol = std::getenv("RIGIDITY_TOL")) env.tol = tol;
    return rigidity::cli::run(args, std::cout, std::cerr, env);
}
